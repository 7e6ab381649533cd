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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qeclab/blossom.hpp"
#include "qeclab/code.hpp"
#include "qeclab/noise.hpp"

namespace qeclab {

class DecoderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A decoder's answer: a Pauli correction whose checks reproduce the
/// decoded syndrome, the logical class of that choice relative to the
/// code's reference error, and a flag for decoders that may give up.
struct Correction {
  PauliOp pauli;
  LogicalClass cls;
  bool gave_up = false;
};

inline Correction make_correction(const StabilizerCode& code, PauliOp pauli, const BitVec* syn = nullptr,
                                  bool gave_up = false) {
  Correction c{std::move(pauli), LogicalClass{0, code.k()}, gave_up};
  if (code.has_logical_classifier()) {
    BitVec s = syn ? *syn : syndrome(code, c.pauli);
    PauliOp rel = c.pauli * code.reference_error(s);
    if (code.in_gauge_group(rel) || code.k() == 0) {
      c.cls = LogicalClass{0, code.k()};
    } else {
      c.cls = code.logical_class_unchecked(rel);
    }
  }
  return c;
}

/// Unit-step cost of a flip with probability p: -ln(p / (1 - p)).
/// Returns nullopt for p = 0 (the step can never happen); p >= 1/2 costs 0.
inline std::optional<double> log_odds_weight(double p) {
  if (p <= 0.0) return std::nullopt;
  if (p >= 0.5) return 0.0;
  return -std::log(p / (1.0 - p));
}

/// Decoding graph for one error component of a CSS code: nodes are the
/// checks that detect it, each qubit is an edge between the (at most two)
/// checks it flips, and qubits flipping a single check lead to the boundary.
/// All-pairs shortest paths are tabulated once.
class SpaceGraph {
 public:
  static constexpr int kUnreachable = std::numeric_limits<int>::max() / 4;

  /// `letter` is the error component: 'X' errors are seen by Z-type checks.
  SpaceGraph(const StabilizerCode& code, char letter) : letter_(letter) {
    if (letter != 'X' && letter != 'Z') throw std::invalid_argument("error component must be X or Z");
    const auto& checks = code.checks();
    node_of_check_.assign(checks.size(), -1);
    for (std::size_t c = 0; c < checks.size(); ++c) {
      const auto& chk = checks[c];
      bool sees = letter == 'X' ? chk.z().any() : chk.x().any();
      if (!sees) continue;
      if (!(letter == 'X' ? chk.is_z_type() : chk.is_x_type())) {
        throw DecoderError("graph decoding needs CSS checks; check " + std::to_string(c + 1) + " mixes X and Z");
      }
      node_of_check_[c] = static_cast<int>(check_of_node_.size());
      check_of_node_.push_back(c);
    }
    const int nn = num_nodes();
    adj_.assign(nn, {});
    boundary_qubit_.assign(nn, -1);
    for (std::size_t q = 0; q < code.n(); ++q) {
      std::vector<int> hit;
      for (int v = 0; v < nn; ++v) {
        const auto& chk = checks[check_of_node_[v]];
        if (letter == 'X' ? chk.z().get(q) : chk.x().get(q)) hit.push_back(v);
      }
      if (hit.size() > 2) {
        throw DecoderError("qubit " + std::to_string(q + 1) + " flips more than two checks; not a matching graph");
      }
      if (hit.size() == 2) {
        adj_[hit[0]].push_back({hit[1], static_cast<int>(q)});
        adj_[hit[1]].push_back({hit[0], static_cast<int>(q)});
      } else if (hit.size() == 1) {
        has_boundary_ = true;
        if (boundary_qubit_[hit[0]] < 0) boundary_qubit_[hit[0]] = static_cast<int>(q);
      }
    }
    n_ = code.n();
    tabulate();
    locate_sites(code);
  }

  char letter() const { return letter_; }
  int num_nodes() const { return static_cast<int>(check_of_node_.size()); }
  std::size_t num_qubits() const { return n_; }
  bool has_boundary() const { return has_boundary_; }
  int node_of_check(std::size_t c) const { return c < node_of_check_.size() ? node_of_check_[c] : -1; }
  std::size_t check_of_node(int v) const { return check_of_node_[v]; }

  /// Lattice position of each node when the code has planar qubit
  /// coordinates and every check sits one step from all of its qubits.
  bool has_sites() const { return !sites_.empty(); }
  const Coord& site(int v) const { return sites_[v]; }
  /// Lattice period per axis for periodic codes, 0 otherwise.
  int period() const { return period_; }

  int distance(int a, int b) const { return dist_[idx(a, b)]; }
  int boundary_distance(int a) const { return bdist_[a]; }

  /// Qubits along a shortest path between two nodes.
  std::vector<std::size_t> path(int a, int b) const {
    std::vector<std::size_t> out;
    if (dist_[idx(a, b)] >= kUnreachable) throw DecoderError("no path between checks");
    int v = b;
    while (v != a) {
      out.push_back(static_cast<std::size_t>(pred_qubit_[idx(a, v)]));
      v = pred_node_[idx(a, v)];
    }
    return out;
  }
  /// Qubits along a shortest path from a node to the boundary.
  std::vector<std::size_t> boundary_path(int a) const {
    std::vector<std::size_t> out;
    if (bdist_[a] >= kUnreachable) throw DecoderError("no path to the boundary");
    int v = a;
    while (v >= 0) {
      out.push_back(static_cast<std::size_t>(bpred_qubit_[v]));
      v = bpred_node_[v];
    }
    return out;
  }

 private:
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * check_of_node_.size() + b; }

  void tabulate() {
    const int nn = num_nodes();
    const std::size_t total = static_cast<std::size_t>(nn) * nn;
    dist_.assign(total, kUnreachable);
    pred_node_.assign(total, -1);
    pred_qubit_.assign(total, -1);
    std::vector<int> frontier;
    for (int s = 0; s < nn; ++s) {
      frontier.clear();
      frontier.push_back(s);
      dist_[idx(s, s)] = 0;
      for (std::size_t head = 0; head < frontier.size(); ++head) {
        int v = frontier[head];
        for (auto [w, q] : adj_[v]) {
          if (dist_[idx(s, w)] < kUnreachable) continue;
          dist_[idx(s, w)] = dist_[idx(s, v)] + 1;
          pred_node_[idx(s, w)] = v;
          pred_qubit_[idx(s, w)] = q;
          frontier.push_back(w);
        }
      }
    }
    // Multi-source search from the boundary.
    bdist_.assign(nn, kUnreachable);
    bpred_node_.assign(nn, -1);
    bpred_qubit_.assign(nn, -1);
    frontier.clear();
    for (int v = 0; v < nn; ++v) {
      if (boundary_qubit_[v] >= 0) {
        bdist_[v] = 1;
        bpred_qubit_[v] = boundary_qubit_[v];
        frontier.push_back(v);
      }
    }
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      int v = frontier[head];
      for (auto [w, q] : adj_[v]) {
        if (bdist_[w] < kUnreachable) continue;
        bdist_[w] = bdist_[v] + 1;
        bpred_node_[w] = v;
        bpred_qubit_[w] = q;
        frontier.push_back(w);
      }
    }
  }

  void locate_sites(const StabilizerCode& code) {
    const auto& coords = code.coords();
    if (coords.size() != code.n() || code.n() == 0) return;
    int w = 0;
    for (const auto& c : coords) w = std::max({w, c[0] + 1, c[1] + 1});
    const bool periodic = code.periodic();
    auto gap = [&](int a, int b) {
      int d = std::abs(a - b);
      return periodic ? std::min(d, w - d) : d;
    };
    std::vector<Coord> sites;
    for (int v = 0; v < num_nodes(); ++v) {
      const auto& chk = code.checks()[check_of_node_[v]];
      BitVec support = chk.x() | chk.z();
      std::vector<std::size_t> qs;
      support.for_each_set([&](std::size_t q) { qs.push_back(q); });
      if (qs.size() < 3) return;
      const auto& c0 = coords[qs[0]];
      const int dx[4] = {-1, 1, 0, 0}, dy[4] = {0, 0, -1, 1};
      std::optional<Coord> found;
      for (int k = 0; k < 4 && !found; ++k) {
        Coord cand{c0[0] + dx[k], c0[1] + dy[k]};
        if (periodic) cand = {((cand[0] % w) + w) % w, ((cand[1] % w) + w) % w};
        bool ok = true;
        for (auto q : qs) ok = ok && gap(coords[q][0], cand[0]) + gap(coords[q][1], cand[1]) == 1;
        if (ok) found = cand;
      }
      if (!found) return;
      // Checks of one type sit on a sublattice of spacing 2.
      sites.push_back({(*found)[0] / 2, (*found)[1] / 2});
    }
    sites_ = std::move(sites);
    period_ = periodic ? w / 2 : 0;
  }

  char letter_;
  std::size_t n_ = 0;
  std::vector<Coord> sites_;
  int period_ = 0;
  bool has_boundary_ = false;
  std::vector<int> node_of_check_;
  std::vector<std::size_t> check_of_node_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  std::vector<int> boundary_qubit_;
  std::vector<int> dist_, pred_node_, pred_qubit_;
  std::vector<int> bdist_, bpred_node_, bpred_qubit_;
};

/// Costs per unit space-like and time-like step; nullopt forbids the step.
struct StepWeights {
  std::optional<double> space;
  std::optional<double> time;

  static StepWeights from_probabilities(double p_space, double q_time) {
    return {log_odds_weight(p_space), log_odds_weight(q_time)};
  }
};

struct MatchingEdge {
  int u = 0;
  int v = 0;
  double weight = 0.0;
  std::int64_t key = 0;  // integer weight used by the solver
};

/// Defects of one error component with their pairwise space-time costs.
/// Nodes [0, d) are defects; with a boundary, node d + i is defect i's
/// private boundary twin and twins are joined by zero-weight edges.
struct MatchingGraph {
  std::vector<DefectEvent> defects;
  std::vector<int> nodes;  // space-graph node of each defect
  bool has_boundary = false;
  std::vector<MatchingEdge> edges;

  std::size_t num_defects() const { return defects.size(); }
  std::size_t num_nodes() const { return has_boundary ? 2 * defects.size() : defects.size(); }
  bool is_twin(int node) const { return node >= static_cast<int>(defects.size()); }
};

namespace detail {
// Integer resolution of the solver's weights.
inline constexpr double kWeightScale = 1 << 20;

inline std::int64_t to_key(double w) { return static_cast<std::int64_t>(std::llround(w * kWeightScale)); }
}  // namespace detail

/// Builds the matching graph from the events of `record` on checks seen by `g`.
inline MatchingGraph build_matching_graph(const SpaceGraph& g, const DefectRecord& record, const StepWeights& w) {
  MatchingGraph mg;
  for (const auto& e : record.events) {
    int v = g.node_of_check(e.check);
    if (v < 0) continue;
    mg.defects.push_back(e);
    mg.nodes.push_back(v);
  }
  const int d = static_cast<int>(mg.defects.size());
  mg.has_boundary = g.has_boundary() && w.space.has_value();
  const std::int64_t ks = w.space ? detail::to_key(*w.space) : 0;
  const std::int64_t kt = w.time ? detail::to_key(*w.time) : 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      int ds = g.distance(mg.nodes[i], mg.nodes[j]);
      if (ds >= SpaceGraph::kUnreachable) continue;
      auto r1 = mg.defects[i].round, r2 = mg.defects[j].round;
      std::int64_t dt = static_cast<std::int64_t>(r1 > r2 ? r1 - r2 : r2 - r1);
      if (ds > 0 && !w.space) continue;
      if (dt > 0 && !w.time) continue;
      double wt = (ds > 0 ? ds * *w.space : 0.0) + (dt > 0 ? dt * *w.time : 0.0);
      mg.edges.push_back({i, j, wt, ks * ds + kt * dt});
    }
  }
  if (mg.has_boundary) {
    for (int i = 0; i < d; ++i) {
      int bd = g.boundary_distance(mg.nodes[i]);
      if (bd >= SpaceGraph::kUnreachable) continue;
      mg.edges.push_back({i, d + i, bd * *w.space, ks * bd});
    }
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) mg.edges.push_back({d + i, d + j, 0.0, 0});
    }
  }
  return mg;
}

/// Minimum-weight perfect matching of a matching graph: pairs (u, v), u < v,
/// in increasing order of u.
inline std::vector<std::pair<int, int>> mwpm(const MatchingGraph& mg) {
  const int nn = static_cast<int>(mg.num_nodes());
  if (nn % 2 != 0) {
    throw MatchingError("odd number of defects (" + std::to_string(nn) + ") and no boundary to absorb parity");
  }
  std::vector<WeightedEdge> edges;
  edges.reserve(mg.edges.size());
  for (const auto& e : mg.edges) edges.push_back({e.u, e.v, e.key});
  auto mate = min_weight_perfect_matching(nn, edges);
  std::vector<std::pair<int, int>> pairs;
  for (int v = 0; v < nn; ++v) {
    if (v < mate[v]) pairs.push_back({v, mate[v]});
  }
  return pairs;
}

/// Applies the spatial paths of a set of matched pairs to `out`.
inline void apply_matched_paths(const SpaceGraph& g, const MatchingGraph& mg,
                                const std::vector<std::pair<int, int>>& pairs, PauliOp& out) {
  auto flip = [&](std::size_t q) {
    if (g.letter() == 'X') out.x().flip(q);
    else out.z().flip(q);
  };
  for (auto [u, v] : pairs) {
    bool tu = mg.is_twin(u), tv = mg.is_twin(v);
    if (tu && tv) continue;
    if (tv) {
      if (v - static_cast<int>(mg.num_defects()) != u) throw DecoderError("defect matched to a foreign boundary twin");
      for (auto q : g.boundary_path(mg.nodes[u])) flip(q);
    } else {
      for (auto q : g.path(mg.nodes[u], mg.nodes[v])) flip(q);
    }
  }
}

/// Per-component flip probabilities a matching decoder assumes.
struct ComponentRates {
  double x = 0.0;  // probability that a unit X-graph step carries an error
  double z = 0.0;
};

/// Space-time minimum-weight matching decoder for CSS codes whose checks
/// form a matching graph (surface, toric, Bacon-Shor column/row checks).
class MatchingDecoder {
 public:
  /// Space step cost used for an error component with rate zero.
  static constexpr double kImpossibleStep = 1000.0;

  MatchingDecoder(const StabilizerCode& code, const ErrorModel& model, std::optional<ComponentRates> rates = {})
      : code_(&code), xg_(code, 'X'), zg_(code, 'Z') {
    ComponentRates r = rates ? *rates : ComponentRates{model.x_marginal(), model.z_marginal()};
    xw_ = StepWeights::from_probabilities(r.x, model.q);
    zw_ = StepWeights::from_probabilities(r.z, model.q);
    // A component that never errs still needs a finite metric when fed a
    // syndrome by hand. The step cost must dwarf any time-like cost, or
    // measurement errors get explained by data errors that cannot happen.
    if (!xw_.space) xw_.space = kImpossibleStep;
    if (!zw_.space) zw_.space = kImpossibleStep;
  }

  const SpaceGraph& graph(char letter) const { return letter == 'X' ? xg_ : zg_; }
  const StepWeights& weights(char letter) const { return letter == 'X' ? xw_ : zw_; }

  Correction decode(const DefectRecord& record) const {
    PauliOp out(code_->n());
    for (const SpaceGraph* g : {&xg_, &zg_}) {
      MatchingGraph mg = build_matching_graph(*g, record, weights(g->letter()));
      if (mg.num_defects() == 0) continue;
      apply_matched_paths(*g, mg, mwpm(mg), out);
    }
    return finish(out, record);
  }

  Correction finish(const PauliOp& out, const DefectRecord& record, bool gave_up = false) const {
    BitVec fv = record.final_values();
    BitVec syn = fv.slice(0, code_->stabilizers().size());
    return make_correction(*code_, out, &syn, gave_up);
  }

 private:
  const StabilizerCode* code_;
  SpaceGraph xg_, zg_;
  StepWeights xw_, zw_;
};

/// Builds the X-component matching graph for a record under `model`.
inline MatchingGraph build_matching_graph(const StabilizerCode& code, const DefectRecord& record,
                                          const ErrorModel& model, char letter = 'X') {
  SpaceGraph g(code, letter);
  double p = letter == 'X' ? model.x_marginal() : model.z_marginal();
  return build_matching_graph(g, record, StepWeights::from_probabilities(p, model.q));
}

inline Correction decode_surface_mwpm(const StabilizerCode& code, const DefectRecord& record, const ErrorModel& model) {
  return MatchingDecoder(code, model).decode(record);
}

}  // namespace qeclab
