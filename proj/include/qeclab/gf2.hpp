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
#include <optional>
#include <stdexcept>
#include <vector>

#include "qeclab/bitvec.hpp"

namespace qeclab::gf2 {

/// Incrementally built echelon basis over GF(2). Each stored row remembers
/// which inserted vectors it is a combination of, so callers can express a
/// vector in terms of the original generators.
class Basis {
 public:
  explicit Basis(std::size_t dim = 0, std::size_t max_inputs = 0) : dim_(dim), max_inputs_(max_inputs) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<BitVec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Residual of v modulo the span; zero iff v is in the span.
  BitVec reduce(BitVec v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (v.get(pivots_[k])) v ^= rows_[k];
    }
    return v;
  }
  bool contains(const BitVec& v) const { return reduce(v).none(); }

  /// Residual plus the set of inserted vectors whose sum removed the rest.
  std::pair<BitVec, BitVec> reduce_tracked(BitVec v) const {
    BitVec combo(max_inputs_);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (v.get(pivots_[k])) {
        v ^= rows_[k];
        combo ^= combos_[k];
      }
    }
    return {std::move(v), std::move(combo)};
  }

  /// Inserts v (tagged as input `id` when tracking). Returns true when v was
  /// independent of the existing span.
  bool add(BitVec v, std::optional<std::size_t> id = std::nullopt) {
    BitVec combo(max_inputs_);
    if (id) combo.set(*id);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (v.get(pivots_[k])) {
        v ^= rows_[k];
        if (max_inputs_) combo ^= combos_[k];
      }
    }
    std::size_t p = v.first_set();
    if (p >= v.size()) return false;
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    combos_.push_back(std::move(combo));
    return true;
  }

 private:
  std::size_t dim_;
  std::size_t max_inputs_;
  std::vector<BitVec> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<BitVec> combos_;
};

inline std::size_t rank(const std::vector<BitVec>& rows) {
  if (rows.empty()) return 0;
  Basis b(rows.front().size());
  for (const auto& r : rows) b.add(r);
  return b.rank();
}

struct Rref {
  std::vector<BitVec> rows;          // nonzero rows only, fully reduced
  std::vector<std::size_t> pivots;   // pivot column of each row, increasing
  std::vector<BitVec> transform;     // rows[k] = sum of inputs in transform[k]
};

/// Reduced row echelon form with lowest-column-first pivoting.
inline Rref rref(const std::vector<BitVec>& input, std::size_t ncols) {
  std::vector<BitVec> a = input;
  std::vector<BitVec> t;
  t.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    BitVec e(a.size());
    e.set(i);
    t.push_back(std::move(e));
  }
  Rref out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && !a[piv].get(c)) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    std::swap(t[piv], t[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i != r && a[i].get(c)) {
        a[i] ^= a[r];
        t[i] ^= t[r];
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  t.resize(r);
  out.rows = std::move(a);
  out.transform = std::move(t);
  return out;
}

/// Basis of { v : <row, v> = 0 for every row }.
inline std::vector<BitVec> nullspace(const std::vector<BitVec>& rows, std::size_t ncols) {
  Rref r = rref(rows, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<BitVec> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    BitVec v(ncols);
    v.set(f);
    for (std::size_t k = 0; k < r.rows.size(); ++k) {
      if (r.rows[k].get(f)) v.set(r.pivots[k]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves A v = b for one solution v, or nullopt if inconsistent.
inline std::optional<BitVec> solve(const std::vector<BitVec>& a, const BitVec& b, std::size_t ncols) {
  Rref r = rref(a, ncols);
  BitVec v(ncols);
  for (std::size_t k = 0; k < r.rows.size(); ++k) {
    if (r.transform[k].dot(b)) v.set(r.pivots[k]);
  }
  // Consistency: every equation must hold.
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].dot(v) != b.get(i)) return std::nullopt;
  }
  return v;
}

/// Solves A v_i = e_i for every unit vector e_i with a single elimination.
/// Returns nullopt unless all systems are consistent (A has full row rank).
inline std::optional<std::vector<BitVec>> solve_unit_targets(const std::vector<BitVec>& a, std::size_t ncols) {
  Rref r = rref(a, ncols);
  if (r.rows.size() != a.size()) return std::nullopt;
  std::vector<BitVec> out(a.size(), BitVec(ncols));
  for (std::size_t k = 0; k < r.rows.size(); ++k) {
    r.transform[k].for_each_set([&](std::size_t i) { out[i].set(r.pivots[k]); });
  }
  return out;
}

/// Inverse of a square matrix given by rows, or nullopt if singular.
inline std::optional<std::vector<BitVec>> inverse(const std::vector<BitVec>& m) {
  std::size_t n = m.size();
  Rref r = rref(m, n);
  if (r.rows.size() != n) return std::nullopt;
  // rows are the identity, so transform is the inverse.
  return r.transform;
}

}  // namespace qeclab::gf2
