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
#include <stdexcept>
#include <string>
#include <string_view>

#include "qeclab/bitvec.hpp"

namespace qeclab {

class PauliParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An n-qubit Pauli operator i^phase * P_0 (x) P_1 (x) ... in the binary
/// symplectic representation. Qubit j carries the letter I (x=0,z=0),
/// X (1,0), Z (0,1) or Y (1,1). Since Y = iXZ, a bare X*Z product on one
/// qubit is stored as letter Y with phase -i.
class PauliOp {
 public:
  PauliOp() = default;
  explicit PauliOp(std::size_t n) : x_(n), z_(n) {}
  PauliOp(BitVec x, BitVec z, std::uint8_t phase = 0) : x_(std::move(x)), z_(std::move(z)), phase_(phase & 3) {
    if (x_.size() != z_.size()) throw DimensionError("x and z parts differ in length");
  }

  static PauliOp identity(std::size_t n) { return PauliOp(n); }
  static PauliOp single(std::size_t n, std::size_t qubit, char letter) {
    PauliOp p(n);
    p.set_letter(qubit, letter);
    return p;
  }
  /// A letter-uniform operator on the given qubits, e.g. Z on {0,3,6}.
  template <typename Range>
  static PauliOp on(std::size_t n, const Range& qubits, char letter) {
    PauliOp p(n);
    for (auto q : qubits) p.set_letter(static_cast<std::size_t>(q), letter);
    return p;
  }

  std::size_t num_qubits() const { return x_.size(); }
  const BitVec& x() const { return x_; }
  const BitVec& z() const { return z_; }
  BitVec& x() { return x_; }
  BitVec& z() { return z_; }

  /// Phase exponent k of the global factor i^k.
  std::uint8_t phase() const { return phase_; }
  void set_phase(std::uint8_t k) { phase_ = k & 3; }
  bool is_hermitian() const { return (phase_ & 1) == 0; }
  /// +1 or -1 for Hermitian operators.
  int sign() const { return phase_ == 0 ? 1 : (phase_ == 2 ? -1 : 0); }
  void negate() { phase_ = static_cast<std::uint8_t>((phase_ + 2) & 3); }

  char letter(std::size_t q) const {
    bool xb = x_.get(q), zb = z_.get(q);
    return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }
  void set_letter(std::size_t q, char letter) {
    switch (letter) {
      case 'I': x_.set(q, false); z_.set(q, false); break;
      case 'X': x_.set(q, true); z_.set(q, false); break;
      case 'Y': x_.set(q, true); z_.set(q, true); break;
      case 'Z': x_.set(q, false); z_.set(q, true); break;
      default: throw PauliParseError(std::string("illegal Pauli letter '") + letter + "'");
    }
  }

  std::size_t weight() const {
    std::size_t w = 0;
    for (std::size_t i = 0; i < x_.num_words(); ++i) w += static_cast<std::size_t>(std::popcount(x_.word(i) | z_.word(i)));
    return w;
  }
  bool is_identity_up_to_phase() const { return x_.none() && z_.none(); }
  bool is_x_type() const { return z_.none(); }
  bool is_z_type() const { return x_.none(); }

  /// Symplectic form: 1 iff the operators anticommute.
  bool symplectic(const PauliOp& o) const {
    check_same(o);
    BitVec::word_t acc = 0;
    for (std::size_t i = 0; i < x_.num_words(); ++i) {
      acc ^= (x_.word(i) & o.z_.word(i)) ^ (z_.word(i) & o.x_.word(i));
    }
    return std::popcount(acc) & 1;
  }
  bool commutes(const PauliOp& o) const { return !symplectic(o); }

  /// this <- this * rhs, tracking the phase exactly.
  PauliOp& operator*=(const PauliOp& rhs) {
    check_same(rhs);
    int acc = phase_ + rhs.phase_;
    for (std::size_t i = 0; i < x_.num_words(); ++i) {
      auto x1 = x_.word(i), z1 = z_.word(i), x2 = rhs.x_.word(i), z2 = rhs.z_.word(i);
      auto xo1 = x1 & ~z1, yo1 = x1 & z1, zo1 = ~x1 & z1;
      auto xo2 = x2 & ~z2, yo2 = x2 & z2, zo2 = ~x2 & z2;
      // XY = iZ, YZ = iX, ZX = iY; reversed orders give -i.
      auto plus = (xo1 & yo2) | (yo1 & zo2) | (zo1 & xo2);
      auto minus = (xo1 & zo2) | (zo1 & yo2) | (yo1 & xo2);
      acc += std::popcount(plus) - std::popcount(minus);
    }
    x_ ^= rhs.x_;
    z_ ^= rhs.z_;
    phase_ = static_cast<std::uint8_t>(((acc % 4) + 4) % 4);
    return *this;
  }
  friend PauliOp operator*(PauliOp a, const PauliOp& b) { return a *= b; }

  /// Equality including phase.
  friend bool operator==(const PauliOp& a, const PauliOp& b) {
    return a.phase_ == b.phase_ && a.x_ == b.x_ && a.z_ == b.z_;
  }
  bool equal_up_to_phase(const PauliOp& o) const { return x_ == o.x_ && z_ == o.z_; }

  /// Stacked [x | z] vector used by the GF(2) routines.
  BitVec symplectic_vector() const { return x_.concat(z_); }
  static PauliOp from_symplectic_vector(const BitVec& v) {
    std::size_t n = v.size() / 2;
    return PauliOp(v.slice(0, n), v.slice(n, n));
  }

 private:
  void check_same(const PauliOp& o) const {
    if (o.num_qubits() != num_qubits()) {
      throw DimensionError("Pauli operators act on " + std::to_string(num_qubits()) + " and " +
                           std::to_string(o.num_qubits()) + " qubits");
    }
  }

  BitVec x_;
  BitVec z_;
  std::uint8_t phase_ = 0;
};

inline PauliOp pauli_mul(const PauliOp& p, const PauliOp& q) { return p * q; }
inline bool commutes(const PauliOp& p, const PauliOp& q) { return p.commutes(q); }
inline std::size_t weight(const PauliOp& p) { return p.weight(); }

/// Parses "[+|-][i]?[IXYZ]+", e.g. "-YI", "+iXZ", "IXZ".
inline PauliOp parse_pauli(std::string_view s) {
  std::uint8_t phase = 0;
  std::size_t pos = 0;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    if (s[pos] == '-') phase = 2;
    ++pos;
  }
  if (pos < s.size() && s[pos] == 'i') {
    phase = static_cast<std::uint8_t>(phase + 1);
    ++pos;
  }
  if (pos == s.size()) throw PauliParseError("empty Pauli string");
  PauliOp p(s.size() - pos);
  for (std::size_t q = 0; pos < s.size(); ++pos, ++q) {
    char c = s[pos];
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw PauliParseError(std::string("illegal character '") + c + "' in Pauli string \"" + std::string(s) + "\"");
    }
    p.set_letter(q, c);
  }
  p.set_phase(phase);
  return p;
}

/// Inverse of parse_pauli; the "+" prefix is omitted.
inline std::string format_pauli(const PauliOp& p) {
  static constexpr const char* kPrefix[4] = {"", "i", "-", "-i"};
  std::string s = kPrefix[p.phase()];
  s.reserve(s.size() + p.num_qubits());
  for (std::size_t q = 0; q < p.num_qubits(); ++q) s.push_back(p.letter(q));
  return s;
}

/// Sparse display with 1-based qubit labels, e.g. "Z1Z4Z7"; "I" for identity.
inline std::string format_sparse(const PauliOp& p) {
  static constexpr const char* kPrefix[4] = {"", "i", "-", "-i"};
  std::string s = kPrefix[p.phase()];
  bool any = false;
  for (std::size_t q = 0; q < p.num_qubits(); ++q) {
    char c = p.letter(q);
    if (c == 'I') continue;
    s.push_back(c);
    s += std::to_string(q + 1);
    any = true;
  }
  if (!any) s += "I";
  return s;
}

}  // namespace qeclab
