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
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qeclab/code.hpp"

namespace qeclab {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one draw.
template <typename R>
inline double uniform01(R& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

enum class NoiseKind { Depolarizing, IndependentXZ, BitFlip };

inline std::string to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::Depolarizing: return "depolarizing";
    case NoiseKind::IndependentXZ: return "independent_xz";
    case NoiseKind::BitFlip: return "bitflip";
  }
  return "?";
}

inline NoiseKind parse_noise_kind(const std::string& s) {
  if (s == "depolarizing") return NoiseKind::Depolarizing;
  if (s == "independent_xz" || s == "xz") return NoiseKind::IndependentXZ;
  if (s == "bitflip" || s == "bitflip_only") return NoiseKind::BitFlip;
  throw std::invalid_argument("unknown noise model '" + s + "'");
}

/// Per-qubit Pauli channel with rate p plus a per-check measurement flip rate q.
struct ErrorModel {
  NoiseKind kind = NoiseKind::Depolarizing;
  double p = 0.0;
  double q = 0.0;

  void validate() const {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("error rate p must lie in [0, 1]");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("measurement error rate q must lie in [0, 1]");
  }
  /// Probabilities of I, X, Z, Y on one qubit.
  std::array<double, 4> letter_probabilities() const {
    switch (kind) {
      case NoiseKind::Depolarizing: return {1 - p, p / 3, p / 3, p / 3};
      case NoiseKind::IndependentXZ: return {(1 - p) * (1 - p), p * (1 - p), p * (1 - p), p * p};
      case NoiseKind::BitFlip: return {1 - p, p, 0.0, 0.0};
    }
    return {1, 0, 0, 0};
  }
  /// Marginal probability that a qubit carries an X component (X or Y).
  double x_marginal() const {
    auto pr = letter_probabilities();
    return pr[1] + pr[3];
  }
  double z_marginal() const {
    auto pr = letter_probabilities();
    return pr[2] + pr[3];
  }
};

/// i.i.d. per-qubit error with sign +1.
template <typename R>
PauliOp sample_error(const ErrorModel& model, std::size_t n, R& rng) {
  PauliOp e(n);
  if (model.p <= 0.0) return e;
  for (std::size_t q = 0; q < n; ++q) {
    switch (model.kind) {
      case NoiseKind::Depolarizing: {
        double u = uniform01(rng);
        if (u < model.p) {
          int which = static_cast<int>(3.0 * u / model.p);
          e.set_letter(q, which == 0 ? 'X' : (which == 1 ? 'Y' : 'Z'));
        }
        break;
      }
      case NoiseKind::IndependentXZ:
        if (uniform01(rng) < model.p) e.x().set(q);
        if (uniform01(rng) < model.p) e.z().set(q);
        break;
      case NoiseKind::BitFlip:
        if (uniform01(rng) < model.p) e.x().set(q);
        break;
    }
  }
  return e;
}

/// Syndrome on the stabilizer generators: bit c is 1 iff E anticommutes with S_c.
inline BitVec syndrome(const StabilizerCode& code, const PauliOp& e) {
  if (e.num_qubits() != code.n()) throw DimensionError("error acts on the wrong number of qubits");
  BitVec s(code.stabilizers().size());
  for (std::size_t c = 0; c < code.stabilizers().size(); ++c) {
    if (e.symplectic(code.stabilizers()[c])) s.set(c);
  }
  return s;
}

/// Values of all measured checks (generators then redundant checks).
inline BitVec check_values(const StabilizerCode& code, const PauliOp& e) {
  if (e.num_qubits() != code.n()) throw DimensionError("error acts on the wrong number of qubits");
  BitVec s(code.checks().size());
  for (std::size_t c = 0; c < code.checks().size(); ++c) {
    if (e.symplectic(code.checks()[c])) s.set(c);
  }
  return s;
}

inline LogicalClass logical_class(const StabilizerCode& code, const PauliOp& p) { return code.logical_class(p); }

/// Which checks each single-qubit X or Z component flips; sparse and fast.
class CheckIncidence {
 public:
  explicit CheckIncidence(const StabilizerCode& code) : num_checks_(code.checks().size()) {
    x_flips_.resize(code.n());
    z_flips_.resize(code.n());
    for (std::size_t c = 0; c < code.checks().size(); ++c) {
      const auto& chk = code.checks()[c];
      for (std::size_t q = 0; q < code.n(); ++q) {
        if (chk.z().get(q)) x_flips_[q].push_back(c);
        if (chk.x().get(q)) z_flips_[q].push_back(c);
      }
    }
  }
  std::size_t num_checks() const { return num_checks_; }
  const std::vector<std::size_t>& x_flips(std::size_t q) const { return x_flips_[q]; }
  const std::vector<std::size_t>& z_flips(std::size_t q) const { return z_flips_[q]; }

  BitVec values(const PauliOp& e) const {
    BitVec s(num_checks_);
    e.x().for_each_set([&](std::size_t q) {
      for (auto c : x_flips_[q]) s.flip(c);
    });
    e.z().for_each_set([&](std::size_t q) {
      for (auto c : z_flips_[q]) s.flip(c);
    });
    return s;
  }

 private:
  std::size_t num_checks_;
  std::vector<std::vector<std::size_t>> x_flips_;
  std::vector<std::vector<std::size_t>> z_flips_;
};

struct DefectEvent {
  std::size_t round = 0;
  std::size_t check = 0;
  friend bool operator==(const DefectEvent& a, const DefectEvent& b) { return a.round == b.round && a.check == b.check; }
  friend bool operator<(const DefectEvent& a, const DefectEvent& b) {
    return a.round != b.round ? a.round < b.round : a.check < b.check;
  }
};

/// Decoder-visible space-time record: an event at (r, c) means the outcome
/// of check c in round r differs from round r-1 (round -1 reads all +1).
struct DefectRecord {
  std::size_t rounds = 0;
  std::size_t num_checks = 0;
  std::vector<DefectEvent> events;  // sorted, unique
  bool final_round_perfect = true;

  /// XOR of all events per check, i.e. the last round's measured values.
  BitVec final_values() const {
    BitVec v(num_checks);
    for (const auto& e : events) v.flip(e.check);
    return v;
  }
  friend bool operator==(const DefectRecord& a, const DefectRecord& b) {
    return a.rounds == b.rounds && a.num_checks == b.num_checks && a.events == b.events;
  }
};

/// Single perfect round whose events are the given check values.
inline DefectRecord record_from_values(const BitVec& values) {
  DefectRecord r;
  r.rounds = 1;
  r.num_checks = values.size();
  values.for_each_set([&](std::size_t c) { r.events.push_back({0, c}); });
  return r;
}

/// Single-round record for a generator syndrome, padding redundant checks
/// with the parity they must have.
inline DefectRecord record_from_syndrome(const StabilizerCode& code, const BitVec& syn) {
  if (syn.size() != code.stabilizers().size()) throw DimensionError("syndrome length differs from generator count");
  BitVec v(code.checks().size());
  syn.for_each_set([&](std::size_t c) { v.set(c); });
  if (!code.redundant_checks().empty()) {
    PauliOp ref = code.reference_error(syn);
    for (std::size_t c = code.stabilizers().size(); c < code.checks().size(); ++c) {
      if (ref.symplectic(code.checks()[c])) v.set(c);
    }
  }
  return record_from_values(v);
}

enum class FinalReadout {
  /// One extra noise-free round of all checks.
  PerfectRound,
  /// Transversal Z readout of the data: Z-type checks are recovered
  /// perfectly in the extra round, other checks are not re-measured.
  TransversalZ,
};

struct HistoryOptions {
  FinalReadout final_readout = FinalReadout::PerfectRound;
};

/// A sampled history: the decoder-visible record plus the ground truth the
/// scorer needs. Decoders only ever receive `record`.
struct SampledHistory {
  DefectRecord record;
  /// Accumulated data error after each noisy round.
  std::vector<PauliOp> cumulative_errors;
  /// Error the final readout sees.
  const PauliOp& final_error() const { return cumulative_errors.back(); }
};

/// R noisy rounds (fresh data errors, then check outcomes flipped with
/// probability q) followed by the final readout round.
template <typename R>
SampledHistory sample_history(const StabilizerCode& code, const CheckIncidence& inc, const ErrorModel& model,
                              std::size_t rounds, R& rng, const HistoryOptions& opt = {}) {
  if (rounds < 1) throw std::invalid_argument("a history needs at least one round");
  SampledHistory h;
  std::size_t nc = inc.num_checks();
  h.record.num_checks = nc;
  h.record.rounds = rounds + 1;
  h.record.final_round_perfect = opt.final_readout == FinalReadout::PerfectRound;
  PauliOp e(code.n());
  BitVec prev(nc), truth(nc);
  for (std::size_t r = 0; r < rounds; ++r) {
    PauliOp fresh = sample_error(model, code.n(), rng);
    truth ^= inc.values(fresh);
    e *= fresh;
    e.set_phase(0);
    h.cumulative_errors.push_back(e);
    BitVec measured = truth;
    if (model.q > 0.0) {
      for (std::size_t c = 0; c < nc; ++c) {
        if (uniform01(rng) < model.q) measured.flip(c);
      }
    }
    (measured ^ prev).for_each_set([&](std::size_t c) { h.record.events.push_back({r, c}); });
    prev = std::move(measured);
  }
  BitVec last = truth;
  if (opt.final_readout == FinalReadout::TransversalZ) {
    for (std::size_t c = 0; c < nc; ++c) {
      if (!code.checks()[c].is_z_type()) last.set(c, prev.get(c));
    }
  }
  (last ^ prev).for_each_set([&](std::size_t c) { h.record.events.push_back({rounds, c}); });
  return h;
}

template <typename R>
SampledHistory sample_history(const StabilizerCode& code, const ErrorModel& model, std::size_t rounds, R& rng,
                              const HistoryOptions& opt = {}) {
  CheckIncidence inc(code);
  return sample_history(code, inc, model, rounds, rng, opt);
}

/// Text form: header "R n_checks", then one "r c" line per event in order.
inline void write_record(std::ostream& os, const DefectRecord& rec) {
  os << rec.rounds << ' ' << rec.num_checks << '\n';
  for (const auto& e : rec.events) os << e.round << ' ' << e.check << '\n';
}

inline std::string record_to_string(const DefectRecord& rec) {
  std::ostringstream os;
  write_record(os, rec);
  return os.str();
}

inline DefectRecord read_record(std::istream& is) {
  DefectRecord rec;
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(is, out)) {
      if (auto h = out.find('#'); h != std::string::npos) out.resize(h);
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line(line)) throw std::runtime_error("defect record: missing header");
  {
    std::istringstream ls(line);
    if (!(ls >> rec.rounds >> rec.num_checks)) throw std::runtime_error("defect record: malformed header");
  }
  while (next_line(line)) {
    std::istringstream ls(line);
    DefectEvent e;
    if (!(ls >> e.round >> e.check)) throw std::runtime_error("defect record: malformed event line '" + line + "'");
    if (e.round >= rec.rounds || e.check >= rec.num_checks) throw std::runtime_error("defect record: event out of range");
    rec.events.push_back(e);
  }
  std::sort(rec.events.begin(), rec.events.end());
  if (std::adjacent_find(rec.events.begin(), rec.events.end()) != rec.events.end()) {
    throw std::runtime_error("defect record: duplicate event");
  }
  return rec;
}

}  // namespace qeclab
