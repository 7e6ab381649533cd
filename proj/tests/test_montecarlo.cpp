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

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <vector>

#include "qeclab/families.hpp"
#include "qeclab/montecarlo.hpp"

namespace qeclab {
namespace {

using namespace families;

constexpr double kZ = 1.959964;

// Wilson bounds straight from the quadratic (p - ph)^2 = z^2 p (1 - p) / n.
std::pair<double, double> wilson_roots(double k, double n) {
  double ph = k / n, z2 = kZ * kZ;
  double a = 1 + z2 / n, b = -(2 * ph + z2 / n), c = ph * ph;
  double disc = std::sqrt(b * b - 4 * a * c);
  return {(-b - disc) / (2 * a), (-b + disc) / (2 * a)};
}

// Exact logical failure rate of a deterministic decoder under i.i.d. bit
// flips: enumerate every X pattern on the code.
std::vector<std::uint64_t> failing_patterns_by_weight(const StabilizerCode& code, const std::string& decoder) {
  auto dec = make_decoder(decoder, code, {NoiseKind::BitFlip, 0.05, 0});
  std::vector<std::uint64_t> count(code.n() + 1, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << code.n()); ++mask) {
    PauliOp e(code.n());
    for (std::size_t q = 0; q < code.n(); ++q) {
      if (mask >> q & 1U) e.x().set(q);
    }
    Correction c = dec->decode(record_from_values(check_values(code, e)));
    if (c.gave_up || !code.logical_class(e * c.pauli).trivial()) ++count[e.weight()];
  }
  return count;
}

double failure_polynomial(const std::vector<std::uint64_t>& a, double p) {
  double total = 0;
  const double n = static_cast<double>(a.size() - 1);
  for (std::size_t w = 0; w < a.size(); ++w) total += a[w] * std::pow(p, w) * std::pow(1 - p, n - w);
  return total;
}

ExperimentConfig config(const std::string& family, int size, ErrorModel model, const std::string& decoder,
                        std::uint64_t trials, std::uint64_t seed = 1) {
  ExperimentConfig cfg;
  cfg.family = family;
  cfg.size = size;
  cfg.model = model;
  cfg.decoder = decoder;
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

TEST(Seeding, SplitmixAndFnvReferenceValues) {
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(fnv1a(""), 0xCBF29CE484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xAF63DC4C8601EC8CULL);
  EXPECT_NE(trial_seed(1, 0), trial_seed(1, 1));
  EXPECT_NE(trial_seed(1, 0), trial_seed(2, 0));
  EXPECT_EQ(trial_seed(7, 123), trial_seed(7, 123));
}

TEST(Wilson, NoFailuresInOneHundred) {
  auto ci = wilson_interval(0, 100);
  EXPECT_EQ(ci.low, 0.0);
  EXPECT_NEAR(ci.high, kZ * kZ / (100 + kZ * kZ), 1e-12);
  EXPECT_NEAR(ci.high, 0.037, 0.001);
  Estimate est = logical_error_rate(TrialStats{100, 0});
  EXPECT_EQ(est.p_logical, 0.0);
}

TEST(Wilson, HalfIsSymmetric) {
  auto ci = wilson_interval(50, 100);
  EXPECT_NEAR(ci.low + ci.high, 1.0, 1e-12);
  EXPECT_LT(ci.low, 0.5);
}

TEST(Wilson, OneInTenMatchesTheQuadratic) {
  auto ci = wilson_interval(1, 10);
  auto [lo, hi] = wilson_roots(1, 10);
  EXPECT_GT(ci.low, 0.0);
  EXPECT_LT(ci.high, 1.0);
  EXPECT_NEAR(ci.low, lo, 1e-12);
  EXPECT_NEAR(ci.high, hi, 1e-12);
  EXPECT_LT(ci.low, 0.1);
  EXPECT_GT(ci.high, 0.1);
}

TEST(Wilson, ContainsThePointEstimateAndRejectsBadCounts) {
  for (std::uint64_t n : {1, 7, 100, 100000}) {
    for (std::uint64_t k = 0; k <= n; k += std::max<std::uint64_t>(1, n / 13)) {
      auto ci = wilson_interval(k, n);
      double ph = static_cast<double>(k) / static_cast<double>(n);
      EXPECT_LE(ci.low, ph);
      EXPECT_GE(ci.high, ph);
    }
  }
  EXPECT_THROW(wilson_interval(0, 0), std::invalid_argument);
  EXPECT_THROW(wilson_interval(5, 4), std::invalid_argument);
  EXPECT_THROW(logical_error_rate(TrialStats{}), std::invalid_argument);
}

TEST(RunTrials, NoNoiseNoFailures) {
  for (const std::string dec : {"mwpm", "rg"}) {
    TrialStats st = run_trials(config("toric", 4, {NoiseKind::Depolarizing, 0.0, 0}, dec, 500));
    EXPECT_EQ(st.trials, 500U);
    EXPECT_EQ(st.failures, 0U);
  }
}

TEST(RunTrials, RepetitionThreeMatchesMajorityVote) {
  for (double p : {0.05, 0.2}) {
    TrialStats st = run_trials(config("repetition", 3, {NoiseKind::BitFlip, p, 0}, "minweight", 100000, 9));
    double expected = 3 * p * p - 2 * p * p * p;
    auto ci = st.ci();
    EXPECT_LE(ci.low, expected) << p;
    EXPECT_GE(ci.high, expected) << p;
    EXPECT_EQ(st.z_failures, 0U);
  }
}

TEST(RunTrials, ShorFailureRateScalesQuadratically) {
  // Exact rate from the decoder's action on every one of the 4^9 errors.
  StabilizerCode code = shor9();
  auto dec = make_decoder("minweight", code, {NoiseKind::Depolarizing, 0.01, 0});
  std::map<std::string, PauliOp> by_syndrome;
  std::vector<std::uint64_t> fails(10, 0);  // by weight, each letter with probability p/3
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << 18); ++i) {
    PauliOp e(9);
    std::uint64_t idx = i;
    for (std::size_t q = 0; q < 9; ++q, idx >>= 2) {
      if (idx & 3) e.set_letter(q, "IXYZ"[idx & 3]);
    }
    BitVec syn = syndrome(code, e);
    auto it = by_syndrome.find(syn.to_string());
    if (it == by_syndrome.end()) {
      it = by_syndrome.emplace(syn.to_string(), dec->decode(record_from_values(check_values(code, e))).pauli).first;
    }
    if (!code.logical_class(e * it->second).trivial()) ++fails[e.weight()];
  }
  EXPECT_EQ(fails[0], 0U);
  EXPECT_EQ(fails[1], 0U);
  EXPECT_GT(fails[2], 0U);
  auto exact = [&](double p) {
    double total = 0;
    for (std::size_t w = 0; w <= 9; ++w) total += fails[w] * std::pow(p / 3, w) * std::pow(1 - p, 9.0 - w);
    return total;
  };
  double ratio = exact(0.02) / exact(0.01);
  EXPECT_GT(ratio, 3.5);
  EXPECT_LT(ratio, 4.1);
  for (double p : {0.01, 0.02}) {
    TrialStats st = run_trials(config("shor9", 0, {NoiseKind::Depolarizing, p, 0}, "minweight", 200000, 4));
    auto ci = wilson_interval(st.failures, st.trials, 3.29);
    EXPECT_LE(ci.low, exact(p)) << p;
    EXPECT_GE(ci.high, exact(p)) << p;
  }
}

TEST(RunTrials, IndependentOfWorkerCount) {
  for (const std::string dec : {"mwpm", "rg"}) {
    auto cfg = config("toric", 5, {NoiseKind::Depolarizing, 0.05, 0.02}, dec, 600, 77);
    cfg.rounds = 3;
    TrialStats one = run_trials(cfg);
    cfg.jobs = 3;
    TrialStats three = run_trials(cfg);
    EXPECT_EQ(one.failures, three.failures);
    EXPECT_EQ(one.x_failures, three.x_failures);
    EXPECT_EQ(one.z_failures, three.z_failures);
    EXPECT_EQ(one.gave_up, three.gave_up);
    EXPECT_GT(one.failures, 0U);
  }
}

TEST(RunTrials, SeedChangesTheSample) {
  auto a = run_trials(config("toric", 4, {NoiseKind::BitFlip, 0.1, 0}, "mwpm", 2000, 1));
  auto b = run_trials(config("toric", 4, {NoiseKind::BitFlip, 0.1, 0}, "mwpm", 2000, 2));
  EXPECT_NE(a.failures, b.failures);
}

TEST(RunTrials, AdaptiveModeStopsAtTargetWidth) {
  auto cfg = config("toric", 4, {NoiseKind::BitFlip, 0.1, 0}, "mwpm", 50000, 3);
  cfg.target_ci_width = 0.05;
  TrialStats st = run_trials(cfg);
  EXPECT_LT(st.trials, 50000U);
  EXPECT_EQ(st.trials % 1000, 0U);
  EXPECT_LE(st.ci().high - st.ci().low, 0.05);
}

TEST(RunTrials, ConfigurationErrorsComeFirst) {
  EXPECT_THROW(run_trials(config("surface", 5, {NoiseKind::Depolarizing, 0.1, 0}, "ml", 10)), DecoderError);
  EXPECT_THROW(run_trials(config("surface", 3, {NoiseKind::Depolarizing, 0.1, 0}, "nope", 10)), std::invalid_argument);
  EXPECT_THROW(run_trials(config("surface", 3, {NoiseKind::Depolarizing, 1.5, 0}, "mwpm", 10)), std::invalid_argument);
  EXPECT_THROW(run_trials(config("surface", 3, {NoiseKind::Depolarizing, 0.1, 0}, "mwpm", 0)), std::invalid_argument);
  EXPECT_THROW(run_trials(config("klein_bottle", 3, {NoiseKind::Depolarizing, 0.1, 0}, "mwpm", 10)), CodeError);
}

TEST(RunTrials, GaugeResidualsCountAsSuccess) {
  // A single gauge generator as the error is harmless on Bacon-Shor.
  StabilizerCode code = bacon_shor(3);
  auto dec = make_decoder("bs1d", code, {NoiseKind::IndependentXZ, 0.01, 0});
  const PauliOp& g = code.gauge().front();
  Correction c = dec->decode(record_from_values(check_values(code, g)));
  EXPECT_TRUE(code.logical_class(g * c.pauli).trivial());
}

TEST(RunTrials, LargerToricCodesFailLessBelowThreshold) {
  const double p = 0.103 / 3;
  std::vector<Interval> cis;
  for (int L : {4, 8, 12}) {
    TrialStats st = run_trials(config("toric", L, {NoiseKind::BitFlip, p, 0}, "mwpm", 30000, 100 + L));
    cis.push_back(st.ci());
  }
  EXPECT_LT(cis[1].high, cis[0].low);
  EXPECT_LT(cis[2].high, cis[1].low);
}

// ---------------------------------------------------------------------------
// Thresholds

CurveSet power_law_curves(double crossing, const std::vector<double>& grid) {
  CurveSet curves;
  for (int L : {3, 5, 7}) {
    for (double p : grid) curves[L].push_back({p, std::pow(p / crossing, L) * 0.01, 0, 1});
  }
  return curves;
}

TEST(Threshold, RecoversSyntheticCrossing) {
  auto est = estimate_threshold(power_law_curves(0.1, {0.06, 0.08, 0.1, 0.12, 0.14}));
  EXPECT_NEAR(est.estimate, 0.1, 1e-12);
  EXPECT_EQ(est.pairs.size(), 3U);
  est = estimate_threshold(power_law_curves(0.1, {0.05, 0.07, 0.09, 0.11, 0.13}));
  EXPECT_NEAR(est.estimate, 0.1, 2e-3);
  EXPECT_LE(est.low, est.estimate);
  EXPECT_GE(est.high, est.estimate);
}

TEST(Threshold, NonCrossingCurvesAreDiagnosed) {
  CurveSet curves;
  for (int L : {3, 5}) {
    for (double p : {0.01, 0.02, 0.03}) curves[L].push_back({p, p * L, 0, 1});
  }
  try {
    estimate_threshold(curves);
    FAIL() << "expected ThresholdError";
  } catch (const ThresholdError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("size 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("size 5"), std::string::npos) << msg;
  }
  CurveSet one;
  one[3] = curves[3];
  EXPECT_THROW(estimate_threshold(one), ThresholdError);
  curves[5].pop_back();
  EXPECT_THROW(estimate_threshold(curves), ThresholdError);
}

TEST(Threshold, PseudoThresholdOfRepetitionThree) {
  // 3p^2 - 2p^3 = p has roots 0, 1/2 and 1.
  std::vector<CurvePoint> curve;
  for (double p = 0.3; p < 0.75; p += 0.07) curve.push_back({p, 3 * p * p - 2 * p * p * p, 0, 1});
  EXPECT_NEAR(pseudo_threshold(curve), 0.5, 5e-3);
  std::vector<CurvePoint> above;
  for (double p : {0.1, 0.2, 0.3}) above.push_back({p, 2 * p, 0, 1});
  EXPECT_THROW(pseudo_threshold(above), ThresholdError);
}

TEST(Threshold, SurfaceThreePseudoThreshold) {
  StabilizerCode code = surface(3);
  auto fails = failing_patterns_by_weight(code, "mwpm");
  EXPECT_EQ(fails[0], 0U);
  EXPECT_EQ(fails[1], 0U);
  // Bisection for the fixed point of the exact failure polynomial.
  double lo = 0.01, hi = 0.49;
  ASSERT_LT(failure_polynomial(fails, lo), lo);
  ASSERT_GT(failure_polynomial(fails, hi), hi);
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    (failure_polynomial(fails, mid) < mid ? lo : hi) = mid;
  }
  const double exact = lo;
  std::printf("surface(3) bit-flip pseudo-threshold under matching: %.6f\n", exact);
  std::vector<CurvePoint> curve;
  for (double p = 0.02; p < 0.4; p += 0.02) curve.push_back({p, failure_polynomial(fails, p), 0, 1});
  EXPECT_NEAR(pseudo_threshold(curve), exact, 2e-3);
  std::vector<CurvePoint> sampled;
  for (double p : {exact - 0.04, exact - 0.02, exact, exact + 0.02, exact + 0.04}) {
    TrialStats st = run_trials(config("surface", 3, {NoiseKind::BitFlip, p, 0}, "mwpm", 40000, 5));
    sampled.push_back({p, st.p_logical(), st.ci().low, st.ci().high});
  }
  EXPECT_NEAR(pseudo_threshold(sampled), exact, 0.01);
}

TEST(Threshold, DecayRateFit) {
  std::vector<std::pair<int, double>> pts;
  for (int L : {4, 6, 8}) pts.push_back({L, std::exp(-0.7 * L + 1.0)});
  EXPECT_NEAR(fit_decay_rate(pts), 0.7, 1e-12);
  EXPECT_THROW(fit_decay_rate({{4, 0.1}}), std::invalid_argument);
  EXPECT_THROW(fit_decay_rate({{4, 0.1}, {6, 0.0}}), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Results table

TEST(Csv, RoundTrip) {
  StabilizerCode code = toric(4);
  auto cfg = config("toric", 4, {NoiseKind::BitFlip, 0.07, 0.01}, "mwpm", 300, 42);
  cfg.rounds = 2;
  TrialStats st = run_trials(code, cfg);
  ResultRow row = make_row(code, cfg, st);
  std::ostringstream os;
  write_csv_header(os);
  write_csv_row(os, row, false);
  write_csv_row(os, row, true);
  std::istringstream is(os.str());
  auto rows = read_csv(is);
  ASSERT_EQ(rows.size(), 2U);
  for (const auto& r : rows) {
    EXPECT_EQ(r.family, "toric");
    EXPECT_EQ(r.params, "L=4");
    EXPECT_EQ(r.decoder, "mwpm");
    EXPECT_DOUBLE_EQ(r.p, 0.07);
    EXPECT_DOUBLE_EQ(r.q, 0.01);
    EXPECT_EQ(r.rounds, 2U);
    EXPECT_EQ(r.trials, st.trials);
    EXPECT_EQ(r.failures, st.failures);
    EXPECT_NEAR(r.p_logical, st.p_logical(), 1e-10);
    EXPECT_NEAR(r.ci_low, st.ci().low, 1e-10);
    EXPECT_NEAR(r.ci_high, st.ci().high, 1e-10);
    EXPECT_EQ(r.seed, 42U);
  }
  EXPECT_EQ(rows[0].wall_time_s, 0.0);
  EXPECT_EQ(size_from_params(rows[0].params), 4);
  auto curves = curves_from_rows(rows);
  ASSERT_EQ(curves.count(4), 1U);
  EXPECT_EQ(curves[4].size(), 2U);
}

TEST(Csv, MalformedInput) {
  std::istringstream no_header("toric,L=4\n");
  EXPECT_THROW(read_csv(no_header), std::runtime_error);
  std::istringstream empty("# schema=1\n");
  EXPECT_THROW(read_csv(empty), std::runtime_error);
  std::istringstream short_row(std::string(kCsvHeader) + "\ntoric,L=4,mwpm\n");
  EXPECT_THROW(read_csv(short_row), std::runtime_error);
  std::istringstream bad_number(std::string(kCsvHeader) + "\ntoric,L=4,mwpm,x,0,1,10,1,0.1,0,1,1,0\n");
  EXPECT_THROW(read_csv(bad_number), std::runtime_error);
  EXPECT_THROW(size_from_params("none"), std::runtime_error);
}

}  // namespace
}  // namespace qeclab
