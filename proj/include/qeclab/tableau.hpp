// Copyright 2026 The qeclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qeclab/pauli.hpp"

namespace qeclab {

class CircuitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class GateKind { H, S, CNOT, X, Z, Measure };

struct Gate {
  GateKind kind;
  std::size_t a = 0;
  std::size_t b = 0;
  PauliOp pauli;  // Measure only

  static Gate h(std::size_t q) { return {GateKind::H, q, 0, {}}; }
  static Gate s(std::size_t q) { return {GateKind::S, q, 0, {}}; }
  static Gate cnot(std::size_t c, std::size_t t) { return {GateKind::CNOT, c, t, {}}; }
  static Gate x(std::size_t q) { return {GateKind::X, q, 0, {}}; }
  static Gate z(std::size_t q) { return {GateKind::Z, q, 0, {}}; }
  static Gate measure(PauliOp p) { return {GateKind::Measure, 0, 0, std::move(p)}; }
};

using CliffordCircuit = std::vector<Gate>;

struct MeasureResult {
  int outcome = 1;  // +1 or -1
  bool deterministic = true;
};

/// Gottesman-Knill stabilizer tableau with destabilizers. Row i of
/// stabilizers() anticommutes with row i of destabilizers() and commutes
/// with all other rows of both.
class Tableau {
 public:
  /// |0...0>: stabilizers Z_i, destabilizers X_i.
  explicit Tableau(std::size_t n) : n_(n) {
    for (std::size_t i = 0; i < n; ++i) {
      stab_.push_back(PauliOp::single(n, i, 'Z'));
      destab_.push_back(PauliOp::single(n, i, 'X'));
    }
  }

  std::size_t num_qubits() const { return n_; }
  const std::vector<PauliOp>& stabilizers() const { return stab_; }
  const std::vector<PauliOp>& destabilizers() const { return destab_; }

  void apply(const Gate& g) {
    switch (g.kind) {
      case GateKind::H: check(g.a); for_rows([&](PauliOp& p) { h(p, g.a); }); break;
      case GateKind::S: check(g.a); for_rows([&](PauliOp& p) { s(p, g.a); }); break;
      case GateKind::X: check(g.a); for_rows([&](PauliOp& p) { if (p.z().get(g.a)) p.negate(); }); break;
      case GateKind::Z: check(g.a); for_rows([&](PauliOp& p) { if (p.x().get(g.a)) p.negate(); }); break;
      case GateKind::CNOT:
        check(g.a);
        check(g.b);
        if (g.a == g.b) throw CircuitError("CNOT control and target coincide");
        for_rows([&](PauliOp& p) { cnot(p, g.a, g.b); });
        break;
      case GateKind::Measure:
        throw CircuitError("measurement needs an rng; use measure() or run_circuit()");
    }
  }

  /// Sign (+1/-1) of the stabilizer-group element equal to +-p, or 0 when
  /// p is not in the stabilizer group up to sign.
  int stabilizer_sign(const PauliOp& p) const {
    if (p.num_qubits() != n_) throw DimensionError("measured operator has wrong qubit count");
    for (const auto& s : stab_) {
      if (s.symplectic(p)) return 0;
    }
    PauliOp prod(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (destab_[i].symplectic(p)) prod *= stab_[i];
    }
    if (!prod.equal_up_to_phase(p)) return 0;
    // prod = i^a P_letters, p = i^b P_letters, so p = i^(b-a) prod.
    int rel = (p.phase() - prod.phase() + 4) % 4;
    if (rel % 2) throw CircuitError("non-Hermitian operator measured");
    return rel == 0 ? 1 : -1;
  }

  /// Projective measurement of a Hermitian Pauli operator.
  template <typename Rng>
  MeasureResult measure(const PauliOp& p, Rng& rng) {
    if (p.num_qubits() != n_) throw DimensionError("measured operator has wrong qubit count");
    if (!p.is_hermitian()) throw CircuitError("non-Hermitian operator measured");
    std::size_t first = n_;
    for (std::size_t i = 0; i < n_; ++i) {
      if (stab_[i].symplectic(p)) {
        first = i;
        break;
      }
    }
    if (first == n_) {
      int sgn = stabilizer_sign(p);
      return {sgn, true};
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (i != first && stab_[i].symplectic(p)) stab_[i] *= stab_[first];
      if (destab_[i].symplectic(p)) destab_[i] *= stab_[first];
    }
    destab_[first] = stab_[first];
    int outcome = (rng() & 1U) ? -1 : 1;
    stab_[first] = p;
    if (outcome < 0) stab_[first].negate();
    return {outcome, false};
  }

 private:
  void check(std::size_t q) const {
    if (q >= n_) throw CircuitError("qubit index " + std::to_string(q) + " out of range for " + std::to_string(n_) + " qubits");
  }
  template <typename F>
  void for_rows(F&& f) {
    for (auto& r : stab_) f(r);
    for (auto& r : destab_) f(r);
  }
  // H: X <-> Z, Y -> -Y
  static void h(PauliOp& p, std::size_t q) {
    bool xb = p.x().get(q), zb = p.z().get(q);
    if (xb && zb) p.negate();
    p.x().set(q, zb);
    p.z().set(q, xb);
  }
  // S: X -> Y, Y -> -X
  static void s(PauliOp& p, std::size_t q) {
    bool xb = p.x().get(q), zb = p.z().get(q);
    if (xb && zb) p.negate();
    if (xb) p.z().set(q, !zb);
  }
  static void cnot(PauliOp& p, std::size_t c, std::size_t t) {
    bool xc = p.x().get(c), zc = p.z().get(c), xt = p.x().get(t), zt = p.z().get(t);
    if (xc && zt && (xt == zc)) p.negate();
    p.x().set(t, xt ^ xc);
    p.z().set(c, zc ^ zt);
  }

  std::size_t n_;
  std::vector<PauliOp> stab_;
  std::vector<PauliOp> destab_;
};

inline void apply_gate(Tableau& t, const Gate& g) { t.apply(g); }

template <typename Rng>
MeasureResult measure_pauli(Tableau& t, const PauliOp& p, Rng& rng) {
  return t.measure(p, rng);
}

/// Runs the gates in order; returns the measurement outcomes in program order.
template <typename Rng>
std::vector<MeasureResult> run_circuit(Tableau& t, const CliffordCircuit& c, Rng& rng) {
  std::vector<MeasureResult> out;
  for (const auto& g : c) {
    if (g.kind == GateKind::Measure) {
      out.push_back(t.measure(g.pauli, rng));
    } else {
      t.apply(g);
    }
  }
  return out;
}

/// Ancilla-based measurement of a Hermitian Pauli `p` on data qubits
/// [0, p.num_qubits()) using the ancilla qubit `ancilla` (prepared in |0>).
/// Each support qubit is rotated so its letter becomes Z, a CNOT copies its
/// parity onto the ancilla, and the rotation is undone; the final ancilla Z
/// measurement reports the eigenvalue of the letters of p (the sign of p
/// multiplies the outcome and is left to the caller).
inline CliffordCircuit ancilla_measurement_circuit(const PauliOp& p, std::size_t ancilla, std::size_t total_qubits) {
  CliffordCircuit c;
  auto sdag = [&](std::size_t q) {
    for (int i = 0; i < 3; ++i) c.push_back(Gate::s(q));
  };
  for (std::size_t q = 0; q < p.num_qubits(); ++q) {
    char l = p.letter(q);
    if (l == 'X') {
      c.push_back(Gate::h(q));
    } else if (l == 'Y') {
      sdag(q);
      c.push_back(Gate::h(q));
    }
    if (l != 'I') c.push_back(Gate::cnot(q, ancilla));
    if (l == 'X') {
      c.push_back(Gate::h(q));
    } else if (l == 'Y') {
      c.push_back(Gate::h(q));
      c.push_back(Gate::s(q));
    }
  }
  c.push_back(Gate::measure(PauliOp::single(total_qubits, ancilla, 'Z')));
  return c;
}

/// Parses the circuit text format: one gate per line, `H q`, `S q`, `X q`,
/// `Z q`, `CNOT c t`, `MEAS <pauli-string>`. Blank lines and `#` comments are
/// ignored. Qubit indices are 0-based.
inline CliffordCircuit parse_circuit(std::istream& in, std::size_t* num_qubits = nullptr) {
  CliffordCircuit c;
  std::string line;
  std::size_t lineno = 0, n = 0;
  auto idx = [&](std::istringstream& ls) {
    long long v = -1;
    if (!(ls >> v) || v < 0) throw CircuitError("line " + std::to_string(lineno) + ": expected a qubit index");
    n = std::max<std::size_t>(n, static_cast<std::size_t>(v) + 1);
    return static_cast<std::size_t>(v);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;
    if (op == "H") {
      c.push_back(Gate::h(idx(ls)));
    } else if (op == "S") {
      c.push_back(Gate::s(idx(ls)));
    } else if (op == "X") {
      c.push_back(Gate::x(idx(ls)));
    } else if (op == "Z") {
      c.push_back(Gate::z(idx(ls)));
    } else if (op == "CNOT") {
      auto a = idx(ls);
      auto b = idx(ls);
      c.push_back(Gate::cnot(a, b));
    } else if (op == "MEAS") {
      std::string ps;
      if (!(ls >> ps)) throw CircuitError("line " + std::to_string(lineno) + ": MEAS needs a Pauli string");
      try {
        c.push_back(Gate::measure(parse_pauli(ps)));
      } catch (const PauliParseError& e) {
        throw CircuitError("line " + std::to_string(lineno) + ": " + e.what());
      }
      n = std::max(n, c.back().pauli.num_qubits());
    } else {
      throw CircuitError("line " + std::to_string(lineno) + ": unknown gate '" + op + "'");
    }
    std::string extra;
    if (ls >> extra) throw CircuitError("line " + std::to_string(lineno) + ": unexpected token '" + extra + "'");
  }
  for (const auto& g : c) {
    if (g.kind == GateKind::Measure && g.pauli.num_qubits() != n) {
      throw CircuitError("MEAS operators must span all " + std::to_string(n) + " qubits");
    }
  }
  if (num_qubits) *num_qubits = n;
  return c;
}

}  // namespace qeclab
