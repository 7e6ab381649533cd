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

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "qeclab/blossom.hpp"
#include "qeclab/families.hpp"
#include "qeclab/matching.hpp"

namespace qeclab {
namespace {

constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::min();

using Adjacency = std::vector<std::vector<std::int64_t>>;  // kNone = no edge

Adjacency random_graph(int n, double density, int max_w, std::mt19937_64& rng, std::vector<WeightedEdge>& edges) {
  Adjacency a(n, std::vector<std::int64_t>(n, kNone));
  std::uniform_real_distribution<double> coin(0, 1);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng) < density) {
        std::int64_t w = static_cast<std::int64_t>(rng() % (max_w + 1));
        a[u][v] = a[v][u] = w;
        edges.push_back({u, v, w});
      }
    }
  }
  return a;
}

// Exhaustive minimum over all perfect matchings; nullopt if none exists.
std::optional<std::int64_t> brute_min_perfect(const Adjacency& a, std::vector<bool>& used) {
  int n = static_cast<int>(a.size()), first = -1;
  for (int v = 0; v < n; ++v) {
    if (!used[v]) {
      first = v;
      break;
    }
  }
  if (first < 0) return 0;
  std::optional<std::int64_t> best;
  used[first] = true;
  for (int v = first + 1; v < n; ++v) {
    if (used[v] || a[first][v] == kNone) continue;
    used[v] = true;
    if (auto rest = brute_min_perfect(a, used)) {
      std::int64_t t = *rest + a[first][v];
      if (!best || t < *best) best = t;
    }
    used[v] = false;
  }
  used[first] = false;
  return best;
}

// Exhaustive maximum-weight matching (any size).
std::int64_t brute_max_weight(const Adjacency& a, std::vector<bool>& used, int from) {
  int n = static_cast<int>(a.size());
  while (from < n && used[from]) ++from;
  if (from >= n) return 0;
  used[from] = true;
  std::int64_t best = brute_max_weight(a, used, from + 1);  // leave unmatched
  for (int v = from + 1; v < n; ++v) {
    if (used[v] || a[from][v] == kNone) continue;
    used[v] = true;
    best = std::max(best, a[from][v] + brute_max_weight(a, used, from + 1));
    used[v] = false;
  }
  used[from] = false;
  return best;
}

std::int64_t matching_weight(const Adjacency& a, const std::vector<int>& mate) {
  std::int64_t t = 0;
  for (int v = 0; v < static_cast<int>(mate.size()); ++v) {
    if (mate[v] > v) {
      EXPECT_NE(a[v][mate[v]], kNone);
      EXPECT_EQ(mate[mate[v]], v);
      t += a[v][mate[v]];
    }
  }
  return t;
}

TEST(Blossom, MinPerfectMatchingAgreesWithBruteForce) {
  std::mt19937_64 rng(41);
  int feasible = 0;
  for (int t = 0; t < 6000; ++t) {
    int n = 2 * (1 + static_cast<int>(rng() % 4));
    double density = (t % 3 == 0) ? 1.0 : 0.3 + 0.7 * (rng() % 100) / 100.0;
    int max_w = (t % 2) ? 3 : 1000;
    std::vector<WeightedEdge> edges;
    Adjacency a = random_graph(n, density, max_w, rng, edges);
    std::vector<bool> used(n, false);
    auto best = brute_min_perfect(a, used);
    if (!best) {
      EXPECT_THROW(min_weight_perfect_matching(n, edges), MatchingError);
      continue;
    }
    ++feasible;
    auto mate = min_weight_perfect_matching(n, edges);
    EXPECT_EQ(matching_weight(a, mate), *best);
  }
  EXPECT_GT(feasible, 3000);
}

TEST(Blossom, CompleteEightNodeGraphsOverAll105Matchings) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 500; ++t) {
    std::vector<WeightedEdge> edges;
    Adjacency a = random_graph(8, 1.0, 1 << 20, rng, edges);
    std::vector<bool> used(8, false);
    EXPECT_EQ(matching_weight(a, min_weight_perfect_matching(8, edges)), *brute_min_perfect(a, used));
  }
}

TEST(Blossom, MaxWeightMatchingAgreesWithBruteForce) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 3000; ++t) {
    int n = 1 + static_cast<int>(rng() % 8);
    std::vector<WeightedEdge> edges;
    Adjacency a = random_graph(n, 0.6, 50, rng, edges);
    std::vector<bool> used(n, false);
    EXPECT_EQ(matching_weight(a, max_weight_matching(n, edges)), brute_max_weight(a, used, 0));
  }
}

TEST(Blossom, SmallCases) {
  auto m = min_weight_perfect_matching(2, {{0, 1, 7}});
  EXPECT_EQ(m, (std::vector<int>{1, 0}));
  // Two short sides of a 1 x 3 rectangle beat the long sides and diagonals.
  std::vector<WeightedEdge> rect = {{0, 1, 1}, {2, 3, 1}, {0, 2, 3}, {1, 3, 3}, {0, 3, 4}, {1, 2, 4}};
  EXPECT_EQ(min_weight_perfect_matching(4, rect), (std::vector<int>{1, 0, 3, 2}));
  EXPECT_THROW(min_weight_perfect_matching(3, {{0, 1, 1}}), MatchingError);
  EXPECT_THROW(min_weight_perfect_matching(2, {{0, 1, -1}}), MatchingError);
  EXPECT_THROW(min_weight_perfect_matching(4, {{0, 1, 1}}), MatchingError);
  EXPECT_TRUE(min_weight_perfect_matching(0, {}).empty());
}

TEST(Matching, LogOddsWeights) {
  EXPECT_FALSE(log_odds_weight(0.0).has_value());
  EXPECT_EQ(*log_odds_weight(0.5), 0.0);
  EXPECT_EQ(*log_odds_weight(0.8), 0.0);
  EXPECT_NEAR(*log_odds_weight(0.1), std::log(9.0), 1e-12);
  EXPECT_NEAR(*log_odds_weight(0.01), std::log(99.0), 1e-12);
}

DefectRecord make_record(std::size_t rounds, std::size_t checks, std::vector<DefectEvent> ev) {
  DefectRecord r;
  r.rounds = rounds;
  r.num_checks = checks;
  std::sort(ev.begin(), ev.end());
  r.events = std::move(ev);
  return r;
}

TEST(Matching, SpaceAndTimeEdgeWeights) {
  auto code = families::toric(4);
  ErrorModel model{NoiseKind::BitFlip, 0.1, 0.01};
  SpaceGraph g(code, 'X');
  // Two plaquettes sharing a qubit.
  std::size_t q = 0;
  std::vector<std::size_t> hit;
  for (std::size_t c = 0; c < code.checks().size(); ++c) {
    if (code.checks()[c].z().get(q)) hit.push_back(c);
  }
  ASSERT_EQ(hit.size(), 2u);
  auto space = build_matching_graph(code, make_record(2, code.checks().size(), {{0, hit[0]}, {0, hit[1]}}), model);
  ASSERT_EQ(space.edges.size(), 1u);
  EXPECT_NEAR(space.edges[0].weight, std::log(9.0), 1e-12);
  EXPECT_FALSE(space.has_boundary);

  auto time = build_matching_graph(code, make_record(2, code.checks().size(), {{0, hit[0]}, {1, hit[0]}}), model);
  ASSERT_EQ(time.edges.size(), 1u);
  EXPECT_NEAR(time.edges[0].weight, std::log(99.0), 1e-12);
  EXPECT_NEAR(time.edges[0].weight / space.edges[0].weight, std::log(99.0) / std::log(9.0), 1e-12);

  // Without measurement errors time-like edges do not exist.
  auto no_time = build_matching_graph(code, make_record(2, code.checks().size(), {{0, hit[0]}, {1, hit[0]}}),
                                      ErrorModel{NoiseKind::BitFlip, 0.1, 0.0});
  EXPECT_TRUE(no_time.edges.empty());
  // Defects on X-type checks are not part of the X-error graph.
  std::size_t star = code.stabilizers().size() - 1;
  ASSERT_TRUE(code.stabilizers()[star].is_x_type());
  EXPECT_EQ(build_matching_graph(code, make_record(1, code.checks().size(), {{0, star}}), model).num_defects(), 0u);
}

TEST(Matching, BoundaryTwinsOnOpenCodes) {
  auto code = families::surface(5);
  ErrorModel model{NoiseKind::BitFlip, 0.05, 0.0};
  // A single Z-plaquette defect next to the rough boundary.
  std::size_t c = 0;
  ASSERT_TRUE(code.stabilizers()[c].is_z_type());
  auto mg = build_matching_graph(code, make_record(1, code.checks().size(), {{0, c}}), model);
  ASSERT_TRUE(mg.has_boundary);
  ASSERT_EQ(mg.num_nodes(), 2u);
  ASSERT_EQ(mg.edges.size(), 1u);
  EXPECT_EQ(mg.edges[0].u, 0);
  EXPECT_EQ(mg.edges[0].v, 1);
  EXPECT_TRUE(std::isfinite(mg.edges[0].weight));
  EXPECT_GT(mg.edges[0].weight, 0.0);

  auto three = build_matching_graph(code, make_record(1, code.checks().size(), {{0, 0}, {0, 1}, {0, 2}}), model);
  int twin_edges = 0;
  for (const auto& e : three.edges) {
    if (three.is_twin(e.u) && three.is_twin(e.v)) {
      ++twin_edges;
      EXPECT_EQ(e.weight, 0.0);
    }
  }
  EXPECT_EQ(twin_edges, 3);
  EXPECT_EQ(mwpm(three).size(), 3u);
}

TEST(Matching, OddDefectsWithoutBoundaryIsAnError) {
  auto code = families::toric(4);
  auto mg = build_matching_graph(code, make_record(1, code.checks().size(), {{0, 0}}),
                                 ErrorModel{NoiseKind::BitFlip, 0.1, 0.0});
  EXPECT_THROW(mwpm(mg), MatchingError);
}

// Flipping the qubits on a path between two nodes must light up exactly
// those two checks; on the torus the path length is the wrapped Manhattan
// distance between the checks' lattice positions.
TEST(Matching, SpaceGraphPathsAreShortestAndConsistent) {
  for (int L : {3, 4, 5}) {
    auto code = families::toric(L);
    for (char letter : {'X', 'Z'}) {
      SpaceGraph g(code, letter);
      ASSERT_TRUE(g.has_sites());
      EXPECT_FALSE(g.has_boundary());
      for (int a = 0; a < g.num_nodes(); ++a) {
        for (int b = 0; b < g.num_nodes(); ++b) {
          auto path = g.path(a, b);
          EXPECT_EQ(static_cast<int>(path.size()), g.distance(a, b));
          EXPECT_EQ(g.distance(a, b), g.distance(b, a));
          PauliOp e(code.n());
          for (auto q : path) e.set_letter(q, letter);
          BitVec v = check_values(code, e);
          BitVec want(code.checks().size());
          if (a != b) {
            want.set(g.check_of_node(a));
            want.set(g.check_of_node(b));
          }
          EXPECT_EQ(v, want);
          auto sa = g.site(a), sb = g.site(b);
          auto wrapped = [&](int d) {
            d = std::abs(d) % L;
            return std::min(d, L - d);
          };
          EXPECT_EQ(g.distance(a, b), wrapped(sa[0] - sb[0]) + wrapped(sa[1] - sb[1]));
        }
      }
    }
  }
}

TEST(Matching, BoundaryPathsOnSurface) {
  auto code = families::surface(5);
  for (char letter : {'X', 'Z'}) {
    SpaceGraph g(code, letter);
    ASSERT_TRUE(g.has_boundary());
    for (int a = 0; a < g.num_nodes(); ++a) {
      auto path = g.boundary_path(a);
      EXPECT_EQ(static_cast<int>(path.size()), g.boundary_distance(a));
      EXPECT_GE(g.boundary_distance(a), 1);
      EXPECT_LE(g.boundary_distance(a), 3);
      PauliOp e(code.n());
      for (auto q : path) e.set_letter(q, letter);
      BitVec v = check_values(code, e);
      EXPECT_EQ(v.popcount(), 1u);
      EXPECT_TRUE(v.get(g.check_of_node(a)));
    }
  }
}

TEST(Matching, SingleErrorDecodedExactly) {
  for (const char* f : {"surface", "toric"}) {
    auto code = build_named_code(f, 5);
    ErrorModel model{NoiseKind::Depolarizing, 0.05, 0.0};
    MatchingDecoder dec(code, model);
    for (std::size_t q = 0; q < code.n(); ++q) {
      for (char l : {'X', 'Y', 'Z'}) {
        PauliOp e = PauliOp::single(code.n(), q, l);
        auto c = dec.decode(record_from_values(check_values(code, e)));
        EXPECT_EQ(c.pauli, e) << f << " " << format_sparse(e);
        EXPECT_TRUE(logical_class(code, c.pauli * e).trivial());
      }
    }
  }
}

TEST(Matching, NoiselessComponentOnlyPairsInTime) {
  // Under bit-flip noise the Z component never errs, so its defects can only
  // come from measurement errors and must never produce a Z correction.
  auto code = families::toric(8);
  ErrorModel model{NoiseKind::BitFlip, 0.01, 0.03};
  MatchingDecoder dec(code, model);
  CheckIncidence inc(code);
  std::mt19937_64 rng(8);
  int with_z_defects = 0;
  for (int t = 0; t < 200; ++t) {
    auto h = sample_history(code, inc, model, 6, rng);
    for (const auto& e : h.record.events) {
      if (code.checks()[e.check].is_x_type()) {
        ++with_z_defects;
        break;
      }
    }
    EXPECT_FALSE(dec.decode(h.record).pauli.z().any());
  }
  EXPECT_GT(with_z_defects, 100);
  // A hand-fed single-round Z syndrome still decodes.
  PauliOp e = PauliOp::single(code.n(), 3, 'Z');
  Correction c = dec.decode(record_from_values(check_values(code, e)));
  EXPECT_TRUE(code.logical_class(e * c.pauli).trivial());
}

TEST(Matching, DecoderIsDeterministic) {
  auto code = families::toric(6);
  ErrorModel model{NoiseKind::Depolarizing, 0.08, 0.08};
  std::mt19937_64 rng(44);
  MatchingDecoder dec(code, model);
  for (int i = 0; i < 30; ++i) {
    auto h = sample_history(code, model, 6, rng);
    auto a = dec.decode(h.record), b = decode_surface_mwpm(code, h.record, model);
    EXPECT_EQ(a.pauli, b.pauli);
    EXPECT_EQ(a.cls.bits, b.cls.bits);
    // Correction reproduces the final-round syndrome.
    EXPECT_EQ(check_values(code, a.pauli), h.record.final_values());
  }
}

}  // namespace
}  // namespace qeclab
