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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qeclab/bitvec.hpp"
#include "qeclab/gf2.hpp"
#include "qeclab/pauli.hpp"

namespace qeclab {

class CodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by logical_class for operators outside the centralizer of S.
class NotInCentralizer : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct LogicalPair {
  PauliOp x;
  PauliOp z;
};

/// Coset label of a logical operator. Bit 2i marks an X-bar_i factor,
/// bit 2i+1 a Z-bar_i factor; zero is the trivial class.
struct LogicalClass {
  std::uint32_t bits = 0;
  std::size_t k = 0;

  bool trivial() const { return bits == 0; }
  bool has_x(std::size_t i) const { return (bits >> (2 * i)) & 1U; }
  bool has_z(std::size_t i) const { return (bits >> (2 * i + 1)) & 1U; }
  /// Any X-bar factor, i.e. the class flips some Z-bar readout.
  bool x_part() const {
    for (std::size_t i = 0; i < k; ++i) {
      if (has_x(i)) return true;
    }
    return false;
  }
  bool z_part() const {
    for (std::size_t i = 0; i < k; ++i) {
      if (has_z(i)) return true;
    }
    return false;
  }
  friend bool operator==(const LogicalClass& a, const LogicalClass& b) { return a.bits == b.bits && a.k == b.k; }
  LogicalClass operator^(const LogicalClass& o) const { return {bits ^ o.bits, k}; }

  std::string to_string() const {
    if (bits == 0) return "I";
    std::string s;
    for (std::size_t i = 0; i < k; ++i) {
      std::string idx = k > 1 ? std::to_string(i + 1) : "";
      if (has_x(i)) s += "Xbar" + idx;
      if (has_z(i)) s += "Zbar" + idx;
    }
    return s;
  }
};

/// A binary linear code given by a parity check matrix with independent rows.
class ClassicalCode {
 public:
  ClassicalCode(std::size_t n, std::vector<BitVec> rows) : n_(n), rows_(std::move(rows)) {
    for (const auto& r : rows_) {
      if (r.size() != n_) throw DimensionError("parity check row length differs from n");
    }
    if (gf2::rank(rows_) != rows_.size()) throw CodeError("parity check rows are not linearly independent");
  }
  static ClassicalCode from_strings(const std::vector<std::string>& rows) {
    if (rows.empty()) throw CodeError("use ClassicalCode(n, {}) for an empty check matrix");
    std::vector<BitVec> r;
    for (const auto& s : rows) r.push_back(BitVec::from_string(s));
    std::size_t n = r.front().size();
    return ClassicalCode(n, std::move(r));
  }
  std::size_t n() const { return n_; }
  std::size_t k() const { return n_ - rows_.size(); }
  const std::vector<BitVec>& rows() const { return rows_; }

 private:
  std::size_t n_;
  std::vector<BitVec> rows_;
};

/// Integer lattice position of a qubit for the 2D families.
using Coord = std::array<int, 2>;

/// Everything needed to build a StabilizerCode; fields as stored.
struct CodeData {
  std::size_t n = 0;
  std::vector<PauliOp> stabilizers;
  std::vector<LogicalPair> logicals;
  std::vector<PauliOp> gauge;
  /// Extra measured checks that are products of stabilizers (toric code).
  std::vector<PauliOp> redundant_checks;
  std::string family = "custom";
  std::map<std::string, int> params;
  std::vector<Coord> coords;
  bool periodic = false;
};

/// A stabilizer or subsystem code with its logical operators. Immutable.
class StabilizerCode {
 public:
  explicit StabilizerCode(CodeData data) : d_(std::move(data)) {
    auto check_len = [&](const PauliOp& p, const char* what) {
      if (p.num_qubits() != d_.n) {
        throw DimensionError(std::string(what) + " acts on " + std::to_string(p.num_qubits()) +
                             " qubits, code has " + std::to_string(d_.n));
      }
    };
    for (const auto& s : d_.stabilizers) check_len(s, "stabilizer");
    for (const auto& g : d_.gauge) check_len(g, "gauge generator");
    for (const auto& r : d_.redundant_checks) check_len(r, "redundant check");
    for (const auto& l : d_.logicals) {
      check_len(l.x, "logical X");
      check_len(l.z, "logical Z");
    }
    if (!d_.coords.empty() && d_.coords.size() != d_.n) throw DimensionError("coordinate count differs from n");
    if (2 * d_.logicals.size() > 32) throw CodeError("at most 16 logical qubits are supported");
    build_tables();
  }

  std::size_t n() const { return d_.n; }
  std::size_t k() const { return d_.logicals.size(); }
  const std::vector<PauliOp>& stabilizers() const { return d_.stabilizers; }
  const std::vector<LogicalPair>& logicals() const { return d_.logicals; }
  const std::vector<PauliOp>& gauge() const { return d_.gauge; }
  const std::vector<PauliOp>& redundant_checks() const { return d_.redundant_checks; }
  /// Measured parity checks: the stabilizer generators followed by any redundant checks.
  const std::vector<PauliOp>& checks() const { return checks_; }
  const std::string& family() const { return d_.family; }
  const std::map<std::string, int>& params() const { return d_.params; }
  const std::vector<Coord>& coords() const { return d_.coords; }
  bool periodic() const { return d_.periodic; }
  bool is_subsystem() const { return !d_.gauge.empty(); }
  const CodeData& data() const { return d_; }

  /// Number of gauge qubits, (rank G - rank S) / 2.
  std::size_t num_gauge_qubits() const {
    if (d_.gauge.empty()) return 0;
    std::size_t rg = gauge_span_.rank();
    std::size_t rs = stab_span_.rank();
    return rg >= rs ? (rg - rs) / 2 : 0;
  }

  bool is_css() const {
    for (const auto& s : checks_) {
      if (!s.is_x_type() && !s.is_z_type()) return false;
    }
    return true;
  }

  /// Parameter string such as "L=3" (empty when there are none).
  std::string param_string() const {
    std::string s;
    for (const auto& [key, v] : d_.params) {
      if (!s.empty()) s += ";";
      s += key + "=" + std::to_string(v);
    }
    return s;
  }

  bool in_stabilizer_group(const PauliOp& p) const { return stab_span_.contains(p.symplectic_vector()); }
  /// Membership in the gauge group (the stabilizer group for non-subsystem codes).
  bool in_gauge_group(const PauliOp& p) const { return equivalence_span().contains(p.symplectic_vector()); }
  const gf2::Basis& equivalence_span() const { return d_.gauge.empty() ? stab_span_ : gauge_span_; }

  bool has_logical_classifier() const { return omega_inv_.has_value(); }

  /// Logical coset of an operator in C(S), modulo S (or G for subsystem codes).
  LogicalClass logical_class(const PauliOp& p) const {
    for (std::size_t i = 0; i < d_.stabilizers.size(); ++i) {
      if (p.symplectic(d_.stabilizers[i])) {
        throw NotInCentralizer("operator " + format_pauli(p) + " anticommutes with stabilizer " +
                               std::to_string(i));
      }
    }
    return logical_class_unchecked(p);
  }

  /// As logical_class but skips the centralizer test; the caller guarantees p is in C(S).
  LogicalClass logical_class_unchecked(const PauliOp& p) const {
    if (!omega_inv_) throw CodeError("logical operators do not form a symplectic basis");
    std::size_t m = 2 * k();
    BitVec v(m);
    for (std::size_t j = 0; j < k(); ++j) {
      if (p.symplectic(d_.logicals[j].x)) v.set(2 * j);
      if (p.symplectic(d_.logicals[j].z)) v.set(2 * j + 1);
    }
    LogicalClass c{0, k()};
    for (std::size_t i = 0; i < m; ++i) {
      if ((*omega_inv_)[i].dot(v)) c.bits |= 1U << i;
    }
    return c;
  }

  /// Product of logical operators selected by a class.
  PauliOp class_representative(const LogicalClass& c) const {
    PauliOp r(n());
    for (std::size_t j = 0; j < k(); ++j) {
      if (c.has_x(j)) r *= d_.logicals[j].x;
      if (c.has_z(j)) r *= d_.logicals[j].z;
    }
    return r;
  }

  /// A fixed error whose syndrome on the stabilizer generators is `syndrome`.
  PauliOp reference_error(const BitVec& syndrome) const {
    if (syndrome.size() != d_.stabilizers.size()) throw DimensionError("syndrome length differs from generator count");
    if (!pure_errors_) throw CodeError("stabilizer generators are dependent; no reference errors");
    PauliOp e(n());
    syndrome.for_each_set([&](std::size_t i) { e *= (*pure_errors_)[i]; });
    e.set_phase(0);
    return e;
  }
  const std::vector<PauliOp>& pure_errors() const {
    if (!pure_errors_) throw CodeError("stabilizer generators are dependent; no reference errors");
    return *pure_errors_;
  }

 private:
  void build_tables() {
    checks_ = d_.stabilizers;
    checks_.insert(checks_.end(), d_.redundant_checks.begin(), d_.redundant_checks.end());
    stab_span_ = gf2::Basis(2 * d_.n);
    for (const auto& s : d_.stabilizers) stab_span_.add(s.symplectic_vector());
    gauge_span_ = gf2::Basis(2 * d_.n);
    for (const auto& g : d_.gauge) gauge_span_.add(g.symplectic_vector());
    for (const auto& s : d_.stabilizers) gauge_span_.add(s.symplectic_vector());

    std::size_t m = 2 * k();
    if (m > 0) {
      std::vector<BitVec> omega;
      std::vector<const PauliOp*> ops;
      for (const auto& l : d_.logicals) {
        ops.push_back(&l.x);
        ops.push_back(&l.z);
      }
      for (std::size_t i = 0; i < m; ++i) {
        BitVec row(m);
        for (std::size_t j = 0; j < m; ++j) {
          if (ops[i]->symplectic(*ops[j])) row.set(j);
        }
        omega.push_back(std::move(row));
      }
      omega_inv_ = gf2::inverse(omega);
    } else {
      omega_inv_ = std::vector<BitVec>{};
    }

    // Pure errors T_i with <T_i, S_j> = delta_ij.
    if (stab_span_.rank() == d_.stabilizers.size()) {
      std::vector<BitVec> a;
      for (const auto& s : d_.stabilizers) a.push_back(s.z().concat(s.x()));
      if (auto sol = gf2::solve_unit_targets(a, 2 * d_.n)) {
        std::vector<PauliOp> pe;
        for (const auto& v : *sol) pe.push_back(PauliOp::from_symplectic_vector(v));
        pure_errors_ = std::move(pe);
      }
    }
  }

  CodeData d_;
  std::vector<PauliOp> checks_;
  gf2::Basis stab_span_;
  gf2::Basis gauge_span_;
  std::optional<std::vector<BitVec>> omega_inv_;
  std::optional<std::vector<PauliOp>> pure_errors_;
};

/// Independent generators of the center of the group generated by
/// `gauge_gens`, modulo phases. Elements come out in a deterministic order.
inline std::vector<PauliOp> derive_center(const std::vector<PauliOp>& gauge_gens) {
  if (gauge_gens.empty()) return {};
  std::size_t m = gauge_gens.size();
  std::size_t n = gauge_gens.front().num_qubits();
  std::vector<BitVec> lambda;
  for (std::size_t i = 0; i < m; ++i) {
    BitVec row(m);
    for (std::size_t j = 0; j < m; ++j) {
      if (gauge_gens[i].symplectic(gauge_gens[j])) row.set(j);
    }
    lambda.push_back(std::move(row));
  }
  gf2::Basis seen(2 * n);
  std::vector<PauliOp> center;
  for (const auto& a : gf2::nullspace(lambda, m)) {
    PauliOp p(n);
    a.for_each_set([&](std::size_t i) { p *= gauge_gens[i]; });
    p.set_phase(0);
    if (p.is_identity_up_to_phase()) continue;
    if (seen.add(p.symplectic_vector())) center.push_back(std::move(p));
  }
  return center;
}

namespace detail {

inline std::vector<LogicalPair> symplectic_gram_schmidt(std::vector<PauliOp> cands) {
  std::vector<LogicalPair> pairs;
  while (!cands.empty()) {
    PauliOp a = cands.front();
    cands.erase(cands.begin());
    std::size_t partner = cands.size();
    for (std::size_t j = 0; j < cands.size(); ++j) {
      if (a.symplectic(cands[j])) {
        partner = j;
        break;
      }
    }
    if (partner == cands.size()) continue;  // a lies in the isotropic part
    PauliOp b = cands[partner];
    cands.erase(cands.begin() + static_cast<std::ptrdiff_t>(partner));
    for (auto& c : cands) {
      bool cb = c.symplectic(b), ca = c.symplectic(a);
      if (cb) c *= a;
      if (ca) c *= b;
      c.set_phase(0);
    }
    a.set_phase(0);
    b.set_phase(0);
    pairs.push_back({std::move(a), std::move(b)});
  }
  return pairs;
}

}  // namespace detail

/// Logical operator pairs for the given checks (and gauge generators),
/// found as the centralizer modulo the stabilizer (or gauge) group and then
/// paired up by symplectic Gram-Schmidt with first-candidate pivoting.
inline std::vector<LogicalPair> complete_logicals(std::size_t n, const std::vector<PauliOp>& stabilizers,
                                                  const std::vector<PauliOp>& gauge = {}) {
  const std::vector<PauliOp>& constraint = gauge.empty() ? stabilizers : gauge;
  gf2::Basis modulo(2 * n);
  for (const auto& s : stabilizers) modulo.add(s.symplectic_vector());
  for (const auto& g : gauge) modulo.add(g.symplectic_vector());

  bool css = true;
  for (const auto& c : constraint) css = css && (c.is_x_type() || c.is_z_type());
  for (const auto& s : stabilizers) css = css && (s.is_x_type() || s.is_z_type());

  std::vector<PauliOp> cands;
  auto take = [&](const PauliOp& p) {
    if (modulo.add(p.symplectic_vector())) cands.push_back(p);
  };
  if (css) {
    // X-type candidates commute with Z-type constraints and vice versa.
    std::vector<BitVec> zrows, xrows;
    for (const auto& c : constraint) {
      if (c.is_z_type() && !c.is_identity_up_to_phase()) zrows.push_back(c.z());
      if (c.is_x_type() && !c.is_identity_up_to_phase()) xrows.push_back(c.x());
    }
    for (const auto& v : gf2::nullspace(zrows, n)) take(PauliOp(v, BitVec(n)));
    for (const auto& v : gf2::nullspace(xrows, n)) take(PauliOp(BitVec(n), v));
  } else {
    std::vector<BitVec> rows;
    for (const auto& c : constraint) rows.push_back(c.z().concat(c.x()));
    for (const auto& v : gf2::nullspace(rows, 2 * n)) take(PauliOp::from_symplectic_vector(v));
  }
  return detail::symplectic_gram_schmidt(std::move(cands));
}

struct Finding {
  std::string what;
  std::vector<PauliOp> witnesses;
};

struct ValidationReport {
  std::vector<Finding> failures;
  std::vector<std::string> notes;
  bool ok() const { return failures.empty(); }
  /// First failure as text, or "ok".
  std::string summary() const {
    if (failures.empty()) return "ok";
    std::string s = failures.front().what;
    for (const auto& w : failures.front().witnesses) s += " [" + format_pauli(w) + "]";
    return s;
  }
};

/// Checks every structural invariant of a code and reports violations with
/// witness operators. Never throws for malformed codes.
inline ValidationReport validate_code(const StabilizerCode& code) {
  ValidationReport rep;
  const auto& S = code.stabilizers();
  const auto& G = code.gauge();
  const auto& L = code.logicals();
  auto fail = [&](std::string what, std::vector<PauliOp> w) { rep.failures.push_back({std::move(what), std::move(w)}); };

  for (std::size_t i = 0; i < S.size(); ++i) {
    if (S[i].phase() != 0) fail("stabilizer " + std::to_string(i) + " does not have sign +1", {S[i]});
  }
  for (std::size_t i = 0; i < S.size(); ++i) {
    for (std::size_t j = i + 1; j < S.size(); ++j) {
      if (S[i].symplectic(S[j])) {
        fail("stabilizers " + std::to_string(i) + " and " + std::to_string(j) + " anticommute", {S[i], S[j]});
      }
    }
  }
  {
    gf2::Basis b(2 * code.n());
    for (std::size_t i = 0; i < S.size(); ++i) {
      if (!b.add(S[i].symplectic_vector())) {
        fail("stabilizer " + std::to_string(i) + " depends on earlier generators", {S[i]});
      }
    }
  }
  for (std::size_t i = 0; i < code.redundant_checks().size(); ++i) {
    const auto& r = code.redundant_checks()[i];
    if (!code.in_stabilizer_group(r)) fail("redundant check " + std::to_string(i) + " is not in the stabilizer group", {r});
  }
  for (std::size_t j = 0; j < L.size(); ++j) {
    for (const PauliOp* op : {&L[j].x, &L[j].z}) {
      for (std::size_t i = 0; i < S.size(); ++i) {
        if (op->symplectic(S[i])) fail("logical " + format_sparse(*op) + " anticommutes with a stabilizer", {*op, S[i]});
      }
      for (std::size_t i = 0; i < G.size(); ++i) {
        if (op->symplectic(G[i])) fail("logical " + format_sparse(*op) + " anticommutes with a gauge generator", {*op, G[i]});
      }
    }
  }
  if (!code.has_logical_classifier()) {
    fail("logical operators do not generate the logical algebra (singular commutation matrix)", {});
  } else {
    for (std::size_t i = 0; i < L.size(); ++i) {
      if (!L[i].x.symplectic(L[i].z)) {
        rep.notes.push_back("logical pair " + std::to_string(i + 1) + " commutes; classes use the full commutation matrix");
      }
      for (std::size_t j = 0; j < L.size(); ++j) {
        if (i == j) continue;
        if (L[i].x.symplectic(L[j].z) || L[i].x.symplectic(L[j].x) || L[i].z.symplectic(L[j].z)) {
          rep.notes.push_back("logical pairs " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                              " are not canonically conjugate");
        }
      }
    }
  }
  if (!G.empty()) {
    auto center = derive_center(G);
    gf2::Basis cb(2 * code.n()), sb(2 * code.n());
    for (const auto& c : center) cb.add(c.symplectic_vector());
    for (const auto& s : S) {
      sb.add(s.symplectic_vector());
      if (!cb.contains(s.symplectic_vector())) fail("stabilizer is not in the center of the gauge group", {s});
    }
    for (const auto& c : center) {
      if (!sb.contains(c.symplectic_vector())) fail("center element is not generated by the stabilizers", {c});
    }
  }
  std::size_t m = code.num_gauge_qubits();
  if (S.size() + code.k() + m != code.n()) {
    fail("generator count " + std::to_string(S.size()) + " != n - k - m = " + std::to_string(code.n()) + " - " +
             std::to_string(code.k()) + " - " + std::to_string(m),
         {});
  }
  return rep;
}

}  // namespace qeclab
