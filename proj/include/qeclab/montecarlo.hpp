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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qeclab/decoders.hpp"
#include "qeclab/families.hpp"
#include "qeclab/noise.hpp"

namespace qeclab {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of trial `index` under `base`; independent of how trials are scheduled.
inline std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(splitmix64(base) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// FNV-1a, used to derive stable per-row seeds from a configuration label.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval; z = 1.959964 gives 95% coverage.
inline Interval wilson_interval(std::uint64_t failures, std::uint64_t trials, double z = 1.959964) {
  if (trials == 0) throw std::invalid_argument("no trials");
  if (failures > trials) throw std::invalid_argument("more failures than trials");
  const double n = static_cast<double>(trials);
  const double ph = static_cast<double>(failures) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (ph + z2 / (2 * n)) / denom;
  const double half = z / denom * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n));
  Interval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (failures == 0) ci.low = 0.0;
  if (failures == trials) ci.high = 1.0;
  return ci;
}

struct ExperimentConfig {
  std::string family;
  int size = 0;
  ErrorModel model;
  std::string decoder = "mwpm";
  std::uint64_t trials = 1000;
  std::size_t rounds = 1;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  HistoryOptions history;
  DecoderOptions decoder_options;
  /// Adaptive mode: when > 0, run batches until the Wilson interval is
  /// narrower than this or `trials` is reached.
  double target_ci_width = 0.0;
};

struct TrialStats {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::uint64_t x_failures = 0;  // residual class has an X-bar component
  std::uint64_t z_failures = 0;  // residual class has a Z-bar component
  std::uint64_t gave_up = 0;     // decoder gave up (counted as failures)
  double wall_time_s = 0.0;

  double p_logical() const { return trials ? static_cast<double>(failures) / static_cast<double>(trials) : 0.0; }
  Interval ci() const { return wilson_interval(failures, trials); }

  TrialStats& operator+=(const TrialStats& o) {
    trials += o.trials;
    failures += o.failures;
    x_failures += o.x_failures;
    z_failures += o.z_failures;
    gave_up += o.gave_up;
    return *this;
  }
};

struct Estimate {
  double p_logical;
  double ci_low;
  double ci_high;
};

inline Estimate logical_error_rate(const TrialStats& s) {
  if (s.trials == 0) throw std::invalid_argument("no trials");
  auto ci = s.ci();
  return {s.p_logical(), ci.low, ci.high};
}

/// Runs trials [begin, end) of an experiment on one thread.
inline TrialStats run_trial_range(const StabilizerCode& code, const CheckIncidence& inc, const Decoder& decoder,
                                  const ExperimentConfig& cfg, std::uint64_t begin, std::uint64_t end) {
  TrialStats st;
  for (std::uint64_t t = begin; t < end; ++t) {
    Rng rng(trial_seed(cfg.seed, t));
    SampledHistory h = sample_history(code, inc, cfg.model, cfg.rounds, rng, cfg.history);
    Correction c = decoder.decode(h.record);
    PauliOp residual = h.final_error() * c.pauli;
    LogicalClass cls = code.logical_class(residual);
    ++st.trials;
    if (c.gave_up) ++st.gave_up;
    if (cls.x_part()) ++st.x_failures;
    if (cls.z_part()) ++st.z_failures;
    if (c.gave_up || !cls.trivial()) ++st.failures;
  }
  return st;
}

namespace detail {

inline TrialStats run_block(const StabilizerCode& code, const ExperimentConfig& cfg, std::uint64_t begin,
                            std::uint64_t end) {
  CheckIncidence inc(code);
  unsigned jobs = std::max(1U, cfg.jobs);
  std::uint64_t count = end - begin;
  if (jobs == 1 || count < 2) {
    auto dec = make_decoder(cfg.decoder, code, cfg.model, cfg.decoder_options);
    return run_trial_range(code, inc, *dec, cfg, begin, end);
  }
  jobs = static_cast<unsigned>(std::min<std::uint64_t>(jobs, count));
  std::vector<TrialStats> parts(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) {
    std::uint64_t b = begin + count * j / jobs, e = begin + count * (j + 1) / jobs;
    pool.emplace_back([&, j, b, e] {
      try {
        auto dec = make_decoder(cfg.decoder, code, cfg.model, cfg.decoder_options);
        parts[j] = run_trial_range(code, inc, *dec, cfg, b, e);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  TrialStats total;
  for (const auto& p : parts) total += p;
  return total;
}

}  // namespace detail

/// Sample, decode and score `cfg.trials` histories. Results depend only on
/// the configuration and seed, never on `cfg.jobs`.
inline TrialStats run_trials(const StabilizerCode& code, const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (cfg.rounds < 1) throw std::invalid_argument("rounds must be at least 1");
  cfg.model.validate();
  // Surface configuration problems before any trial runs.
  (void)make_decoder(cfg.decoder, code, cfg.model, cfg.decoder_options);
  auto t0 = std::chrono::steady_clock::now();
  TrialStats st;
  if (cfg.target_ci_width > 0.0) {
    constexpr std::uint64_t kBatch = 1000;
    while (st.trials < cfg.trials) {
      std::uint64_t next = std::min(cfg.trials, st.trials + kBatch);
      st += detail::run_block(code, cfg, st.trials, next);
      auto ci = st.ci();
      if (ci.high - ci.low <= cfg.target_ci_width) break;
    }
  } else {
    st = detail::run_block(code, cfg, 0, cfg.trials);
  }
  st.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return st;
}

inline TrialStats run_trials(const ExperimentConfig& cfg) {
  StabilizerCode code = build_named_code(cfg.family, cfg.size);
  return run_trials(code, cfg);
}

// ---------------------------------------------------------------------------
// Thresholds

class ThresholdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CurvePoint {
  double p = 0.0;
  double p_logical = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

/// Logical error rate versus physical rate, one curve per code size.
using CurveSet = std::map<int, std::vector<CurvePoint>>;

struct ThresholdEstimate {
  double estimate = 0.0;
  double low = 0.0;  // smallest pairwise crossing
  double high = 0.0;  // largest pairwise crossing
  struct Pair {
    int small;
    int large;
    double crossing;
  };
  std::vector<Pair> pairs;
};

namespace detail {

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

/// ln p_logical interpolated linearly in p; nullopt outside the data or at zero rates.
inline std::optional<double> log_rate_at(const std::vector<CurvePoint>& c, double p) {
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    if (p < c[i].p || p > c[i + 1].p) continue;
    if (c[i].p_logical <= 0 || c[i + 1].p_logical <= 0) return std::nullopt;
    double a = std::log(c[i].p_logical), b = std::log(c[i + 1].p_logical);
    double t = c[i + 1].p == c[i].p ? 0.0 : (p - c[i].p) / (c[i + 1].p - c[i].p);
    return a + t * (b - a);
  }
  if (!c.empty() && p == c.back().p && c.back().p_logical > 0) return std::log(c.back().p_logical);
  return std::nullopt;
}

inline std::string describe_endpoints(const CurveSet& curves) {
  std::ostringstream os;
  for (const auto& [size, c] : curves) {
    if (c.empty()) continue;
    os << " size " << size << ": p_logical(" << c.front().p << ")=" << c.front().p_logical << ", p_logical("
       << c.back().p << ")=" << c.back().p_logical << ";";
  }
  return os.str();
}

}  // namespace detail

/// Pairwise crossings of the log-linear interpolations of every pair of
/// curves; reports their median and min-max spread.
inline ThresholdEstimate estimate_threshold(CurveSet curves) {
  if (curves.size() < 2) throw ThresholdError("need curves for at least two sizes");
  for (auto& [size, c] : curves) {
    if (c.size() < 3) throw ThresholdError("size " + std::to_string(size) + " has fewer than three points");
    std::sort(c.begin(), c.end(), [](const CurvePoint& a, const CurvePoint& b) { return a.p < b.p; });
  }
  ThresholdEstimate out;
  for (auto a = curves.begin(); a != curves.end(); ++a) {
    for (auto b = std::next(a); b != curves.end(); ++b) {
      std::vector<double> grid;
      for (const auto& pt : a->second) grid.push_back(pt.p);
      for (const auto& pt : b->second) grid.push_back(pt.p);
      std::sort(grid.begin(), grid.end());
      grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
      std::vector<std::pair<double, double>> diff;
      for (double p : grid) {
        auto la = detail::log_rate_at(a->second, p), lb = detail::log_rate_at(b->second, p);
        if (la && lb) diff.push_back({p, *lb - *la});
      }
      std::vector<double> hits;
      for (std::size_t i = 0; i + 1 < diff.size(); ++i) {
        double d0 = diff[i].second, d1 = diff[i + 1].second;
        if (d0 == 0.0) {
          hits.push_back(diff[i].first);
        } else if ((d0 < 0) != (d1 < 0) && d1 != 0.0) {
          hits.push_back(diff[i].first + (diff[i + 1].first - diff[i].first) * (-d0) / (d1 - d0));
        }
      }
      if (!diff.empty() && diff.back().second == 0.0) hits.push_back(diff.back().first);
      if (hits.empty()) continue;
      out.pairs.push_back({a->first, b->first, detail::median(hits)});
    }
  }
  if (out.pairs.empty()) throw ThresholdError("no crossing inside the sampled range;" + detail::describe_endpoints(curves));
  std::vector<double> xs;
  for (const auto& pr : out.pairs) xs.push_back(pr.crossing);
  out.estimate = detail::median(xs);
  out.low = *std::min_element(xs.begin(), xs.end());
  out.high = *std::max_element(xs.begin(), xs.end());
  return out;
}

/// Break-even point p_logical(p) = p of one curve, interpolating ln(p_logical / p) linearly in p.
inline double pseudo_threshold(std::vector<CurvePoint> curve) {
  std::sort(curve.begin(), curve.end(), [](const CurvePoint& a, const CurvePoint& b) { return a.p < b.p; });
  std::vector<std::pair<double, double>> f;
  for (const auto& pt : curve) {
    if (pt.p > 0 && pt.p_logical > 0) f.push_back({pt.p, std::log(pt.p_logical / pt.p)});
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].second == 0.0) return f[i].first;
    if (i + 1 < f.size() && (f[i].second < 0) != (f[i + 1].second < 0)) {
      double d0 = f[i].second, d1 = f[i + 1].second;
      return f[i].first + (f[i + 1].first - f[i].first) * (-d0) / (d1 - d0);
    }
  }
  throw ThresholdError("the curve never crosses p_logical = p in the sampled range");
}

/// Least-squares slope of -ln p_logical against size: the decay rate in
/// p_logical ~ exp(-rate * L).
inline double fit_decay_rate(const std::vector<std::pair<int, double>>& points) {
  if (points.size() < 2) throw std::invalid_argument("need at least two sizes");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [size, pl] : points) {
    if (pl <= 0) throw std::invalid_argument("zero logical error rate cannot be fitted");
    double x = size, y = -std::log(pl);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(points.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// Results table

struct ResultRow {
  std::string family;
  std::string params;
  std::string decoder;
  double p = 0;
  double q = 0;
  std::size_t rounds = 1;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double p_logical = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::uint64_t seed = 0;
  double wall_time_s = 0;
};

inline const char* kCsvHeader =
    "family,params,decoder,p,q,R,trials,failures,p_logical,ci_low,ci_high,seed,wall_time_s";

inline ResultRow make_row(const StabilizerCode& code, const ExperimentConfig& cfg, const TrialStats& st) {
  auto ci = st.ci();
  return {code.family(), code.param_string(), cfg.decoder, cfg.model.p, cfg.model.q, cfg.rounds, st.trials,
          st.failures, st.p_logical(), ci.low, ci.high, cfg.seed, st.wall_time_s};
}

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline void write_csv_header(std::ostream& os) { os << "# schema=1\n" << kCsvHeader << '\n'; }

inline void write_csv_row(std::ostream& os, const ResultRow& r, bool with_timing) {
  os << r.family << ',' << r.params << ',' << r.decoder << ',' << format_number(r.p) << ',' << format_number(r.q)
     << ',' << r.rounds << ',' << r.trials << ',' << r.failures << ',' << format_number(r.p_logical) << ','
     << format_number(r.ci_low) << ',' << format_number(r.ci_high) << ',' << r.seed << ','
     << (with_timing ? format_number(r.wall_time_s) : std::string("0")) << '\n';
}

/// Parses a results CSV (comment lines start with '#').
inline std::vector<ResultRow> read_csv(std::istream& is) {
  std::vector<ResultRow> rows;
  std::string line;
  bool header = false;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != kCsvHeader) throw std::runtime_error("unexpected CSV header: " + line);
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 13) throw std::runtime_error("CSV line " + std::to_string(lineno) + " has " + std::to_string(f.size()) + " fields");
    try {
      ResultRow r;
      r.family = f[0];
      r.params = f[1];
      r.decoder = f[2];
      r.p = std::stod(f[3]);
      r.q = std::stod(f[4]);
      r.rounds = std::stoul(f[5]);
      r.trials = std::stoull(f[6]);
      r.failures = std::stoull(f[7]);
      r.p_logical = std::stod(f[8]);
      r.ci_low = std::stod(f[9]);
      r.ci_high = std::stod(f[10]);
      r.seed = std::stoull(f[11]);
      r.wall_time_s = std::stod(f[12]);
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw std::runtime_error("CSV line " + std::to_string(lineno) + " has a malformed number");
    }
  }
  if (!header) throw std::runtime_error("CSV has no header line");
  return rows;
}

/// Size parameter of a params string such as "L=8" or "n=17".
inline int size_from_params(const std::string& params) {
  auto eq = params.find('=');
  if (eq == std::string::npos) throw std::runtime_error("params '" + params + "' carry no size");
  return std::stoi(params.substr(eq + 1));
}

inline CurveSet curves_from_rows(const std::vector<ResultRow>& rows) {
  CurveSet c;
  for (const auto& r : rows) c[size_from_params(r.params)].push_back({r.p, r.p_logical, r.ci_low, r.ci_high});
  return c;
}

}  // namespace qeclab
