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
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qeclab/code.hpp"
#include "qeclab/matching.hpp"
#include "qeclab/noise.hpp"

namespace qeclab {

namespace detail {

inline BitVec generator_syndrome(const StabilizerCode& code, const DefectRecord& record) {
  if (record.num_checks != code.checks().size()) throw DimensionError("record has the wrong number of checks");
  return record.final_values().slice(0, code.stabilizers().size());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Maximum likelihood

/// Exact coset decoder: sums the model probability of every element of each
/// coset E·P·S (E·P·G for subsystem codes) and returns the heaviest coset.
class MlDecoder {
 public:
  static constexpr std::size_t kDefaultMaxGenerators = 26;

  MlDecoder(const StabilizerCode& code, const ErrorModel& model, std::size_t max_generators = kDefaultMaxGenerators)
      : code_(&code) {
    for (const auto& row : code.equivalence_span().rows()) gens_.push_back(PauliOp::from_symplectic_vector(row));
    if (gens_.size() > max_generators) {
      throw DecoderError("maximum-likelihood decoding enumerates 2^" + std::to_string(gens_.size()) +
                         " group elements; the cap is 2^" + std::to_string(max_generators));
    }
    if (!code.has_logical_classifier()) throw DecoderError("code has no logical classifier");
    auto pr = model.letter_probabilities();
    for (int i = 0; i < 4; ++i) logp_[i] = pr[i] > 0 ? std::log(static_cast<long double>(pr[i])) : -INFINITY;
    shift_ = -*std::max_element(logp_.begin(), logp_.end());
  }

  /// Total probability of the coset of `e`.
  long double coset_weight(const PauliOp& e) const {
    BitVec x = e.x(), z = e.z();
    long double total = weight_of(x, z);
    const std::size_t m = gens_.size();
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << m); ++i) {
      std::size_t flip = static_cast<std::size_t>(std::countr_zero(i));
      x ^= gens_[flip].x();
      z ^= gens_[flip].z();
      total += weight_of(x, z);
    }
    return total;
  }

  Correction decode_syndrome(const BitVec& syn) const {
    PauliOp ref = code_->reference_error(syn);
    const std::uint32_t classes = 1U << (2 * code_->k());
    std::uint32_t best = 0;
    long double best_w = -1;
    for (std::uint32_t c = 0; c < classes; ++c) {
      long double w = coset_weight(ref * code_->class_representative(LogicalClass{c, code_->k()}));
      if (w > best_w) {
        best_w = w;
        best = c;
      }
    }
    PauliOp e = ref * code_->class_representative(LogicalClass{best, code_->k()});
    e.set_phase(0);
    return Correction{std::move(e), LogicalClass{best, code_->k()}, false};
  }

  Correction decode(const DefectRecord& record) const {
    return decode_syndrome(detail::generator_syndrome(*code_, record));
  }

 private:
  long double weight_of(const BitVec& x, const BitVec& z) const {
    std::size_t nx = 0, nz = 0, ny = 0;
    for (std::size_t w = 0; w < x.num_words(); ++w) {
      nx += static_cast<std::size_t>(std::popcount(x.word(w)));
      nz += static_cast<std::size_t>(std::popcount(z.word(w)));
      ny += static_cast<std::size_t>(std::popcount(x.word(w) & z.word(w)));
    }
    nx -= ny;
    nz -= ny;
    std::size_t ni = x.size() - nx - ny - nz;
    long double lp = 0;
    const std::size_t counts[4] = {ni, nx, nz, ny};
    for (int i = 0; i < 4; ++i) {
      if (counts[i] == 0) continue;
      if (std::isinf(logp_[i])) return 0;
      lp += counts[i] * (logp_[i] + shift_);
    }
    return std::exp(lp);
  }

  const StabilizerCode* code_;
  std::vector<PauliOp> gens_;
  std::array<long double, 4> logp_{};
  long double shift_ = 0;
};

inline Correction decode_ml(const StabilizerCode& code, const BitVec& syn, const ErrorModel& model) {
  return MlDecoder(code, model).decode_syndrome(syn);
}

// ---------------------------------------------------------------------------
// Exhaustive minimum weight

/// Searches errors in order of weight; within a weight, supports in
/// lexicographic order and letters X < Y < Z per site, earliest site
/// varying slowest. The first hit is returned.
class MinWeightDecoder {
 public:
  static constexpr std::uint64_t kDefaultNodeCap = 200'000'000;

  explicit MinWeightDecoder(const StabilizerCode& code, std::uint64_t node_cap = kDefaultNodeCap)
      : code_(&code), node_cap_(node_cap) {
    const std::size_t n = code.n();
    site_.resize(n);
    for (std::size_t q = 0; q < n; ++q) {
      site_[q][0] = syndrome(code, PauliOp::single(n, q, 'X'));
      site_[q][1] = syndrome(code, PauliOp::single(n, q, 'Y'));
      site_[q][2] = syndrome(code, PauliOp::single(n, q, 'Z'));
    }
  }

  std::optional<PauliOp> search(const BitVec& syn, std::size_t max_weight) const {
    const std::size_t n = code_->n();
    std::uint64_t nodes = 0;
    std::vector<std::pair<std::size_t, int>> chosen;
    for (std::size_t w = 0; w <= std::min(max_weight, n); ++w) {
      BitVec acc(syn.size());
      std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t left) -> bool {
        if (++nodes > node_cap_) throw DecoderError("minimum-weight search exceeded its node cap");
        if (left == 0) return acc == syn;
        for (std::size_t q = start; q + left <= n; ++q) {
          for (int l = 0; l < 3; ++l) {
            acc ^= site_[q][l];
            chosen.push_back({q, l});
            if (rec(q + 1, left - 1)) return true;
            chosen.pop_back();
            acc ^= site_[q][l];
          }
        }
        return false;
      };
      if (rec(0, w)) {
        PauliOp e(n);
        for (auto [q, l] : chosen) e.set_letter(q, "XYZ"[l]);
        return e;
      }
    }
    return std::nullopt;
  }

  Correction decode_syndrome(const BitVec& syn) const {
    auto e = search(syn, code_->n());
    if (!e) throw DecoderError("no error reproduces the syndrome");
    return make_correction(*code_, *e, &syn);
  }

  Correction decode(const DefectRecord& record) const {
    return decode_syndrome(detail::generator_syndrome(*code_, record));
  }

 private:
  const StabilizerCode* code_;
  std::uint64_t node_cap_;
  std::vector<std::array<BitVec, 3>> site_;  // syndromes of X, Y, Z on each qubit
};

inline Correction decode_minweight_exhaustive(const StabilizerCode& code, const BitVec& syn) {
  return MinWeightDecoder(code).decode_syndrome(syn);
}

// ---------------------------------------------------------------------------
// Renormalization-group clustering

enum class RgLocalFix {
  /// Minimum-weight matching inside each neutral cluster.
  Matching,
  /// Any local solution: peel a spanning tree of the cluster's links.
  Tree,
  /// Any local solution: move every defect onto one member.
  Star,
};

enum class RgGrouping {
  /// Level l joins defects within space-time distance 2^l.
  Linking,
  /// Level l tiles space-time with aligned boxes of side 2^l. Pairs that
  /// straddle a box edge wait for a coarser level, which costs a threshold.
  Boxes,
};

struct RgOptions {
  /// Growth rounds; 0 picks ceil(log2 L) + 1.
  int max_levels = 0;
  RgGrouping grouping = RgGrouping::Linking;
  RgLocalFix local_fix = RgLocalFix::Tree;
};

/// Groups defects at doubling length scales. At level l, defects within
/// space-time distance 2^l of each other join one cluster; a cluster with
/// even charge, or odd charge and a member within 2^l of the boundary, is
/// annihilated locally and removed. Defects left after the last level make
/// the decoder give up; the correction then still matches the syndrome.
class RgDecoder {
 public:
  RgDecoder(const StabilizerCode& code, RgOptions opt = {})
      : code_(&code), xg_(code, 'X'), zg_(code, 'Z'), opt_(opt) {
    if (opt_.grouping == RgGrouping::Boxes && !(xg_.has_sites() && zg_.has_sites())) {
      throw DecoderError("box grouping needs checks placed on a planar lattice");
    }
    if (opt_.max_levels <= 0) {
      int scale = 0;
      if (auto it = code.params().find("L"); it != code.params().end()) scale = it->second;
      else scale = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(code.n()))));
      opt_.max_levels = static_cast<int>(std::ceil(std::log2(std::max(scale, 1)))) + 1;
    }
  }

  int max_levels() const { return opt_.max_levels; }

  Correction decode(const DefectRecord& record) const {
    PauliOp out(code_->n());
    bool gave_up = false;
    for (const SpaceGraph* g : {&xg_, &zg_}) {
      if (!decode_component(*g, record, out)) gave_up = true;
    }
    BitVec syn = detail::generator_syndrome(*code_, record);
    return make_correction(*code_, out, &syn, gave_up);
  }

 private:
  struct Event {
    std::size_t round;
    int node;
  };

  static int find(std::vector<int>& parent, int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }

  long distance(const SpaceGraph& g, const Event& a, const Event& b) const {
    long ds = g.distance(a.node, b.node);
    if (ds >= SpaceGraph::kUnreachable) return SpaceGraph::kUnreachable;
    long dt = static_cast<long>(a.round > b.round ? a.round - b.round : b.round - a.round);
    return ds + dt;
  }

  bool decode_component(const SpaceGraph& g, const DefectRecord& record, PauliOp& out) const {
    std::vector<Event> active;
    for (const auto& e : record.events) {
      int v = g.node_of_check(e.check);
      if (v >= 0) active.push_back({e.round, v});
    }
    auto flip_path = [&](const std::vector<std::size_t>& qs) {
      for (auto q : qs) {
        if (g.letter() == 'X') out.x().flip(q);
        else out.z().flip(q);
      }
    };
    for (int level = 0; level < opt_.max_levels && !active.empty(); ++level) {
      const long reach = 1L << level;
      const int a = static_cast<int>(active.size());
      std::vector<int> parent(a);
      std::iota(parent.begin(), parent.end(), 0);
      std::vector<std::pair<int, int>> links;
      if (opt_.grouping == RgGrouping::Boxes) {
        std::map<std::array<long, 3>, int> box_root;
        for (int i = 0; i < a; ++i) {
          const auto& s = g.site(active[i].node);
          std::array<long, 3> box{s[0] / reach, s[1] / reach, static_cast<long>(active[i].round) / reach};
          auto [it, fresh] = box_root.emplace(box, i);
          if (!fresh) {
            parent[i] = it->second;
            links.push_back({it->second, i});
          }
        }
      } else {
        for (int i = 0; i < a; ++i) {
          for (int j = i + 1; j < a; ++j) {
            if (distance(g, active[i], active[j]) > reach) continue;
            int ri = find(parent, i), rj = find(parent, j);
            if (ri == rj) continue;
            parent[std::max(ri, rj)] = std::min(ri, rj);
            links.push_back({i, j});
          }
        }
      }
      std::vector<std::vector<int>> members(a);
      for (int i = 0; i < a; ++i) members[find(parent, i)].push_back(i);
      std::vector<char> resolved(a, 0);
      for (int root = 0; root < a; ++root) {
        const auto& mem = members[root];
        if (mem.empty()) continue;
        int anchor = -1;  // member closest to the boundary within reach
        for (int i : mem) {
          int bd = g.boundary_distance(active[i].node);
          if (bd <= reach && (anchor < 0 || bd < g.boundary_distance(active[anchor].node))) anchor = i;
        }
        bool odd = mem.size() % 2 == 1;
        if (odd && anchor < 0) continue;
        if (opt_.local_fix == RgLocalFix::Matching) {
          fix_by_matching(g, active, mem, anchor >= 0, out);
        } else if (opt_.local_fix == RgLocalFix::Star) {
          int hub = odd ? anchor : mem.front();
          for (int i : mem) {
            if (i != hub) flip_path(g.path(active[i].node, active[hub].node));
          }
          if (odd) flip_path(g.boundary_path(active[hub].node));
        } else {
          fix_by_tree(g, active, mem, links, parent, odd ? anchor : -1, flip_path);
        }
        for (int i : mem) resolved[i] = 1;
      }
      std::vector<Event> rest;
      for (int i = 0; i < a; ++i) {
        if (!resolved[i]) rest.push_back(active[i]);
      }
      active = std::move(rest);
    }
    if (active.empty()) return true;
    // Out of levels. Still pair up what is left so the correction matches
    // the syndrome, but report the failure.
    int hub = 0;
    for (int i = 1; i < static_cast<int>(active.size()); ++i) {
      if (g.boundary_distance(active[i].node) < g.boundary_distance(active[hub].node)) hub = i;
    }
    for (int i = 0; i < static_cast<int>(active.size()); ++i) {
      if (i != hub) flip_path(g.path(active[i].node, active[hub].node));
    }
    if (active.size() % 2 == 1 && g.boundary_distance(active[hub].node) < SpaceGraph::kUnreachable) {
      flip_path(g.boundary_path(active[hub].node));
    }
    return false;
  }

  void fix_by_matching(const SpaceGraph& g, const std::vector<Event>& active, const std::vector<int>& mem,
                       bool boundary, PauliOp& out) const {
    DefectRecord sub;
    sub.num_checks = code_->checks().size();
    for (int i : mem) {
      sub.events.push_back({active[i].round, g.check_of_node(active[i].node)});
      sub.rounds = std::max(sub.rounds, active[i].round + 1);
    }
    MatchingGraph mg = build_matching_graph(g, sub, StepWeights{1.0, 1.0});
    if (!boundary && mg.has_boundary) {
      // Drop boundary twins: the cluster must pair up internally.
      MatchingGraph inner;
      inner.defects = mg.defects;
      inner.nodes = mg.nodes;
      const int d = static_cast<int>(mg.num_defects());
      for (const auto& e : mg.edges) {
        if (e.u < d && e.v < d) inner.edges.push_back(e);
      }
      mg = std::move(inner);
    }
    apply_matched_paths(g, mg, mwpm(mg), out);
  }

  template <typename Flip>
  void fix_by_tree(const SpaceGraph& g, const std::vector<Event>& active, const std::vector<int>& mem,
                   const std::vector<std::pair<int, int>>& links, std::vector<int>& parent, int anchor,
                   Flip&& flip_path) const {
    const int root_id = find(parent, mem.front());
    std::vector<std::vector<int>> adj(active.size());
    for (auto [i, j] : links) {
      if (find(parent, i) != root_id) continue;
      adj[i].push_back(j);
      adj[j].push_back(i);
    }
    int start = anchor >= 0 ? anchor : mem.front();
    // Iterative DFS order, then peel leaves towards the start.
    std::vector<int> order, up(active.size(), -1);
    std::vector<char> seen(active.size(), 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (int w : adj[v]) {
        if (seen[w]) continue;
        seen[w] = 1;
        up[w] = v;
        stack.push_back(w);
      }
    }
    std::vector<char> charge(active.size(), 0);
    for (int i : mem) charge[i] = 1;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int v = *it;
      if (v == start || !charge[v]) continue;
      flip_path(g.path(active[v].node, active[up[v]].node));
      charge[up[v]] ^= 1;
    }
    if (charge[start]) flip_path(g.boundary_path(active[start].node));
  }

  const StabilizerCode* code_;
  SpaceGraph xg_, zg_;
  RgOptions opt_;
};

inline Correction decode_rg(const StabilizerCode& code, const DefectRecord& record, int max_rounds = 0) {
  RgOptions opt;
  opt.max_levels = max_rounds;
  return RgDecoder(code, opt).decode(record);
}

// ---------------------------------------------------------------------------
// Bacon-Shor line decoder

/// Matching on the line of column (row) checks. A column's X parity flips
/// with probability (1 - (1 - 2p)^n) / 2, which sets the space-like cost;
/// with a single perfect round this picks the lighter of E and its
/// complement, and with repeated rounds it matches on the line x time.
class BaconShorDecoder {
 public:
  BaconShorDecoder(const StabilizerCode& code, const ErrorModel& model)
      : matcher_(check_family(code), model, rates(code, model)) {}

  Correction decode(const DefectRecord& record) const { return matcher_.decode(record); }

 private:
  static const StabilizerCode& check_family(const StabilizerCode& code) {
    if (code.family() != "bacon_shor") throw DecoderError("bs1d decodes the bacon_shor family only");
    return code;
  }
  static ComponentRates rates(const StabilizerCode& code, const ErrorModel& model) {
    check_family(code);  // argument evaluation order is unspecified
    int n = code.params().at("n");
    auto parity = [n](double p) { return 0.5 * (1.0 - std::pow(1.0 - 2.0 * p, n)); };
    return {parity(model.x_marginal()), parity(model.z_marginal())};
  }

  MatchingDecoder matcher_;
};

inline Correction decode_bacon_shor(const StabilizerCode& code, const DefectRecord& record,
                                    const ErrorModel& model = {NoiseKind::IndependentXZ, 0.01, 0.0}) {
  return BaconShorDecoder(code, model).decode(record);
}

// ---------------------------------------------------------------------------
// Selection by name

class Decoder {
 public:
  virtual ~Decoder() = default;
  virtual std::string name() const = 0;
  virtual Correction decode(const DefectRecord& record) const = 0;
};

namespace detail {
template <typename Impl>
class DecoderAdapter final : public Decoder {
 public:
  template <typename... Args>
  explicit DecoderAdapter(std::string name, Args&&... args)
      : name_(std::move(name)), impl_(std::forward<Args>(args)...) {}
  std::string name() const override { return name_; }
  Correction decode(const DefectRecord& record) const override { return impl_.decode(record); }

 private:
  std::string name_;
  Impl impl_;
};
}  // namespace detail

struct DecoderOptions {
  RgOptions rg;
  std::size_t ml_max_generators = MlDecoder::kDefaultMaxGenerators;
  std::uint64_t minweight_node_cap = MinWeightDecoder::kDefaultNodeCap;
};

inline const std::vector<std::string>& decoder_names() {
  static const std::vector<std::string> names{"ml", "minweight", "mwpm", "rg", "bs1d"};
  return names;
}

/// Constructs a decoder; configuration problems (unknown name, size caps,
/// unsupported code) throw before any decoding happens.
inline std::unique_ptr<Decoder> make_decoder(const std::string& name, const StabilizerCode& code,
                                             const ErrorModel& model, const DecoderOptions& opt = {}) {
  if (name == "ml") return std::make_unique<detail::DecoderAdapter<MlDecoder>>(name, code, model, opt.ml_max_generators);
  if (name == "minweight") {
    return std::make_unique<detail::DecoderAdapter<MinWeightDecoder>>(name, code, opt.minweight_node_cap);
  }
  if (name == "mwpm") return std::make_unique<detail::DecoderAdapter<MatchingDecoder>>(name, code, model);
  if (name == "rg") return std::make_unique<detail::DecoderAdapter<RgDecoder>>(name, code, opt.rg);
  if (name == "bs1d") return std::make_unique<detail::DecoderAdapter<BaconShorDecoder>>(name, code, model);
  throw std::invalid_argument("unknown decoder '" + name + "' (expected ml, minweight, mwpm, rg or bs1d)");
}

}  // namespace qeclab
