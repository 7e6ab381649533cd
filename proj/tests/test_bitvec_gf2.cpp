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


#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>

#include "qeclab/bitvec.hpp"
#include "qeclab/gf2.hpp"

namespace qeclab {
namespace {

BitVec random_vec(std::size_t n, std::mt19937_64& rng) {
  BitVec v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng() & 1) v.set(i);
  }
  return v;
}

BitVec from_mask(std::size_t n, std::uint64_t mask) {
  BitVec v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if ((mask >> i) & 1) v.set(i);
  }
  return v;
}

TEST(BitVec, StringRoundTripAndAccess) {
  BitVec v = BitVec::from_string("1011001");
  EXPECT_EQ(v.size(), 7u);
  EXPECT_TRUE(v.get(0));
  EXPECT_FALSE(v.get(1));
  EXPECT_EQ(v.popcount(), 4u);
  EXPECT_EQ(v.to_string(), "1011001");
  EXPECT_EQ(v.first_set(), 0u);
}

TEST(BitVec, WordBoundaries) {
  BitVec v(130);
  v.set(63);
  v.set(64);
  v.set(129);
  EXPECT_EQ(v.popcount(), 3u);
  std::vector<std::size_t> seen;
  v.for_each_set([&](std::size_t i) { seen.push_back(i); });
  EXPECT_EQ(seen, (std::vector<std::size_t>{63, 64, 129}));
  BitVec s = v.slice(60, 10);
  EXPECT_EQ(s.to_string(), "0001100000");
  BitVec c = BitVec::from_string("10").concat(BitVec::from_string("011"));
  EXPECT_EQ(c.to_string(), "10011");
}

TEST(BitVec, LengthMismatchThrows) {
  BitVec a(3), b(4);
  EXPECT_THROW(a ^= b, DimensionError);
  EXPECT_THROW((void)a.dot(b), DimensionError);
}

TEST(BitVec, DotMatchesNaiveParity) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 500; ++t) {
    std::size_t n = 1 + rng() % 200;
    BitVec a = random_vec(n, rng), b = random_vec(n, rng);
    int naive = 0;
    for (std::size_t i = 0; i < n; ++i) naive ^= a.get(i) & b.get(i);
    EXPECT_EQ(a.dot(b), naive == 1);
  }
}

// Brute force: the rank is log2 of the number of distinct spans.
TEST(Gf2, RankMatchesSpanEnumeration) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng() % 8, m = 1 + rng() % 6;
    std::vector<BitVec> rows;
    for (std::size_t i = 0; i < m; ++i) rows.push_back(random_vec(n, rng));
    std::set<std::string> span;
    for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
      BitVec s(n);
      for (std::size_t i = 0; i < m; ++i) {
        if ((mask >> i) & 1) s ^= rows[i];
      }
      span.insert(s.to_string());
    }
    std::size_t r = 0;
    while ((1ULL << r) < span.size()) ++r;
    EXPECT_EQ(gf2::rank(rows), r);
  }
}

TEST(Gf2, NullspaceIsExactlyTheKernel) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng() % 8, m = rng() % 6;
    std::vector<BitVec> rows;
    for (std::size_t i = 0; i < m; ++i) rows.push_back(random_vec(n, rng));
    auto ns = gf2::nullspace(rows, n);
    std::size_t kernel = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
      BitVec v = from_mask(n, mask);
      bool in = true;
      for (const auto& r : rows) in = in && !r.dot(v);
      kernel += in;
    }
    EXPECT_EQ(1ULL << ns.size(), kernel);
    for (const auto& v : ns) {
      for (const auto& r : rows) EXPECT_FALSE(r.dot(v));
    }
    EXPECT_EQ(gf2::rank(ns), ns.size());
  }
}

TEST(Gf2, SolveAgreesWithExhaustiveSearch) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 1 + rng() % 7, m = 1 + rng() % 6;
    std::vector<BitVec> a;
    for (std::size_t i = 0; i < m; ++i) a.push_back(random_vec(n, rng));
    BitVec b = random_vec(m, rng);
    bool solvable = false;
    for (std::uint64_t mask = 0; mask < (1ULL << n) && !solvable; ++mask) {
      BitVec v = from_mask(n, mask);
      bool ok = true;
      for (std::size_t i = 0; i < m; ++i) ok = ok && a[i].dot(v) == b.get(i);
      solvable = ok;
    }
    auto v = gf2::solve(a, b, n);
    ASSERT_EQ(v.has_value(), solvable);
    if (v) {
      for (std::size_t i = 0; i < m; ++i) EXPECT_EQ(a[i].dot(*v), b.get(i));
    }
  }
}

TEST(Gf2, UnitTargetsGiveADualBasis) {
  std::mt19937_64 rng(6);
  int full = 0;
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 1 + rng() % 9, m = 1 + rng() % 6;
    std::vector<BitVec> a;
    for (std::size_t i = 0; i < m; ++i) a.push_back(random_vec(n, rng));
    auto sol = gf2::solve_unit_targets(a, n);
    ASSERT_EQ(sol.has_value(), gf2::rank(a) == m);
    if (!sol) continue;
    ++full;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) EXPECT_EQ(a[j].dot((*sol)[i]), i == j);
    }
  }
  EXPECT_GT(full, 50);
}

TEST(Gf2, InverseTimesMatrixIsIdentity) {
  std::mt19937_64 rng(5);
  int invertible = 0;
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 1 + rng() % 7;
    std::vector<BitVec> m;
    for (std::size_t i = 0; i < n; ++i) m.push_back(random_vec(n, rng));
    auto inv = gf2::inverse(m);
    ASSERT_EQ(inv.has_value(), gf2::rank(m) == n);
    if (!inv) continue;
    ++invertible;
    for (std::size_t i = 0; i < n; ++i) {
      // Row i of inv * m.
      BitVec row(n);
      for (std::size_t k = 0; k < n; ++k) {
        if ((*inv)[i].get(k)) row ^= m[k];
      }
      EXPECT_EQ(row, from_mask(n, 1ULL << i));
    }
  }
  EXPECT_GT(invertible, 20);
}

TEST(Gf2, TrackedReductionExpressesVectorInInputs) {
  std::mt19937_64 rng(6);
  std::vector<BitVec> gens;
  gf2::Basis basis(12, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    gens.push_back(random_vec(12, rng));
    basis.add(gens.back(), i);
  }
  BitVec target(12);
  target ^= gens[1];
  target ^= gens[4];
  auto [residual, combo] = basis.reduce_tracked(target);
  EXPECT_TRUE(residual.none());
  BitVec rebuilt(12);
  combo.for_each_set([&](std::size_t i) { rebuilt ^= gens[i]; });
  EXPECT_EQ(rebuilt, target);
}

}  // namespace
}  // namespace qeclab
