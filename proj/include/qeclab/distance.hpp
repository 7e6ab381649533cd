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
#include <unordered_map>
#include <vector>

#include "qeclab/code.hpp"

namespace qeclab {

struct DistanceResult {
  /// Exact distance when a logical operator of weight <= cap was found.
  std::optional<std::size_t> distance;
  /// Every logical operator has weight >= lower_bound.
  std::size_t lower_bound = 0;
  /// A minimum-weight logical operator when distance is set.
  std::optional<PauliOp> witness;
};

/// Minimum weight over C(S) \ S (or C(S) \ G for subsystem codes), searching
/// weights 1..weight_cap in order. Supports are enumerated in lexicographic
/// order; the last site is looked up in a syndrome table instead of scanned.
inline DistanceResult distance(const StabilizerCode& code, std::size_t weight_cap) {
  const std::size_t n = code.n();
  const auto& S = code.stabilizers();
  const std::size_t m = S.size();
  static constexpr char kLetters[3] = {'X', 'Y', 'Z'};

  // site_syn[q*3 + l] = syndrome of letter l on qubit q
  std::vector<BitVec> site_syn;
  site_syn.reserve(3 * n);
  for (std::size_t q = 0; q < n; ++q) {
    for (char l : kLetters) {
      BitVec s(m);
      PauliOp p = PauliOp::single(n, q, l);
      for (std::size_t i = 0; i < m; ++i) {
        if (p.symplectic(S[i])) s.set(i);
      }
      site_syn.push_back(std::move(s));
    }
  }
  struct HashBits {
    std::size_t operator()(const BitVec& b) const { return b.hash(); }
  };
  std::unordered_map<BitVec, std::vector<std::size_t>, HashBits> by_syndrome;
  for (std::size_t i = 0; i < site_syn.size(); ++i) by_syndrome[site_syn[i]].push_back(i);

  DistanceResult result;
  std::vector<std::size_t> chosen;  // encoded q*3 + l
  std::vector<BitVec> partial;

  auto is_logical = [&](const std::vector<std::size_t>& sites) -> std::optional<PauliOp> {
    PauliOp p(n);
    for (auto s : sites) p.set_letter(s / 3, kLetters[s % 3]);
    if (code.in_gauge_group(p)) return std::nullopt;
    return p;
  };

  for (std::size_t w = 1; w <= weight_cap && w <= n; ++w) {
    chosen.assign(w, 0);
    partial.assign(w, BitVec(m));
    std::optional<PauliOp> found;
    // Depth-first over the first w-1 sites; partial[d] is the syndrome of sites [0, d).
    auto rec = [&](auto&& self, std::size_t depth, std::size_t next_qubit) -> bool {
      if (depth + 1 == w) {
        auto it = by_syndrome.find(partial[depth]);
        if (it == by_syndrome.end()) return false;
        for (auto site : it->second) {
          if (site / 3 < next_qubit) continue;
          chosen[depth] = site;
          if (auto p = is_logical(chosen)) {
            found = std::move(p);
            return true;
          }
        }
        return false;
      }
      for (std::size_t q = next_qubit; q + (w - depth) <= n; ++q) {
        for (std::size_t l = 0; l < 3; ++l) {
          chosen[depth] = q * 3 + l;
          partial[depth + 1] = partial[depth] ^ site_syn[q * 3 + l];
          if (self(self, depth + 1, q + 1)) return true;
        }
      }
      return false;
    };
    if (rec(rec, 0, 0)) {
      result.distance = w;
      result.lower_bound = w;
      result.witness = std::move(found);
      return result;
    }
    result.lower_bound = w + 1;
  }
  return result;
}

}  // namespace qeclab
