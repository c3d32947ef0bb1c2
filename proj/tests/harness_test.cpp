// Copyright 2026 The pwrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <cmath>

#include "pwrec/harness.hpp"

namespace pwrec {
namespace {

TEST(PairedEstimator, MatchesDirectComputation) {
  // Pairs (d0, d1): z = (d1 - d0) / 2 takes values 0, 1/2, -1/2.
  const bool pairs[][2] = {{0, 1}, {0, 1}, {1, 1}, {0, 0}, {1, 0}, {0, 1}};
  PairedEstimator est;
  double zs[6];
  for (int i = 0; i < 6; ++i) {
    est.add(pairs[i][0], pairs[i][1]);
    zs[i] = (double(pairs[i][1]) - double(pairs[i][0])) / 2;
  }
  double mean = 0;
  for (double z : zs) mean += z / 6;
  double var = 0;
  for (double z : zs) var += (z - mean) * (z - mean) / 5;
  const AdvantageEstimate r = est.result("x");
  EXPECT_DOUBLE_EQ(r.advantage, mean);
  // 97.5th percentile of the standard normal.
  EXPECT_NEAR(r.half_width, 1.959963984540054 * std::sqrt(var / 6), 1e-12);
  EXPECT_EQ(r.trials, 6u);
  EXPECT_EQ(r.distinguisher, "x");
}

TEST(PairedEstimator, IdenticalDecisionsGiveExactZero) {
  PairedEstimator est;
  for (int i = 0; i < 100; ++i) est.add(i % 3 == 0, i % 3 == 0);
  const AdvantageEstimate r = est.result("x");
  EXPECT_EQ(r.advantage, 0);
  EXPECT_EQ(r.half_width, 0);
  EXPECT_TRUE(r.contains_zero());
}

TEST(ChiSquare, KnownValues) {
  EXPECT_EQ(chi_square_statistic({10, 10, 10, 10}), 0);
  EXPECT_DOUBLE_EQ(chi_square_p_value({10, 10, 10, 10}), 1);
  // One degree of freedom: P[X > x] = erfc(sqrt(x / 2)).
  EXPECT_DOUBLE_EQ(chi_square_statistic({20, 0}), 20);
  EXPECT_NEAR(chi_square_p_value({20, 0}), std::erfc(std::sqrt(10.0)), 1e-15);
  EXPECT_NEAR(chi_square_p_value({12, 8}), std::erfc(std::sqrt(0.4)), 1e-12);
}

AdvantageEstimate by_name(const std::vector<AdvantageEstimate>& v, Distinguisher d) {
  for (const auto& e : v) {
    if (e.distinguisher == distinguisher_name(d)) return e;
  }
  ADD_FAILURE() << "missing " << distinguisher_name(d);
  return {};
}

TEST(Games, EquivocationIndistinguishable) {
  for (int game : {1, 2}) {
    EquivocationGameConfig cfg;
    cfg.game = game;
    cfg.trials = 1500;
    const auto est = run_equivocation_game(cfg);
    ASSERT_EQ(est.size(), 2u);
    EXPECT_EQ(by_name(est, Distinguisher::kAttemptCombine).advantage, 0) << game;
    EXPECT_LT(std::abs(by_name(est, Distinguisher::kChiSquare).advantage), 0.05) << game;
  }
}

TEST(Games, LeakyOracleDetected) {
  EquivocationGameConfig cfg;
  cfg.game = 2;
  cfg.trials = 500;
  cfg.fault = OracleFault::kFReusesGenuineShares;
  const auto e = by_name(run_equivocation_game(cfg), Distinguisher::kAttemptCombine);
  EXPECT_GT(e.low(), 0.4);
}

TEST(Games, LocalRegistration) {
  LocalGameConfig cfg;
  cfg.trials = 1500;
  const auto masked = run_local_pr_game(cfg);
  EXPECT_TRUE(by_name(masked, Distinguisher::kOffsetCorrelation).contains_zero());
  cfg.unmasked_offsets = true;
  EXPECT_GT(by_name(run_local_pr_game(cfg), Distinguisher::kOffsetCorrelation).low(), 0.4);
  cfg.unmasked_offsets = false;
  cfg.p1 = cfg.p0;
  for (const auto& e : run_local_pr_game(cfg)) EXPECT_EQ(e.advantage, 0);
}

TEST(Games, AssumptionEnsembles) {
  AssumptionGameConfig cfg;
  cfg.trials = 1500;
  EXPECT_TRUE(by_name(run_assumption_sanity(cfg), Distinguisher::kInterpolation).contains_zero());
  cfg.m = 1;
  EXPECT_GT(by_name(run_assumption_sanity(cfg), Distinguisher::kInterpolation).low(), 0.4);
  cfg.m = 16;
  cfg.alpha_prime = cfg.alpha;
  for (const auto& e : run_assumption_sanity(cfg)) EXPECT_EQ(e.advantage, 0);
}

TEST(Complexity, HashServerWorkIsLinear) {
  const PasswordSpec spec;
  const ComplexityReport r = measure_complexity("hash", spec, named_params("toy"), 3, 7);
  EXPECT_EQ(r.min_server_exponentiations, spec.n + 2);
  EXPECT_EQ(r.max_server_exponentiations, spec.n + 2);
  EXPECT_EQ(r.max_exact_subsets, 1u);
  EXPECT_LE(r.max_subsets, 56u);  // C(8, 5)
}

TEST(Selftest, ReducedRunPasses) {
  SelftestConfig cfg;
  cfg.trials = 400;
  cfg.complexity_trials = 2;
  const Json report = run_selftest(cfg);
  ASSERT_TRUE(report.contains("checks"));
  EXPECT_EQ(report["checks"].size(), 11u);
  for (const auto& c : report["checks"]) {
    // Tight interval widths need the full trial count; detection must not.
    if (c["name"].get<std::string>().find("leaky") != std::string::npos ||
        c["name"].get<std::string>().find("unmasked") != std::string::npos ||
        c["name"].get<std::string>().find("no-chaff") != std::string::npos ||
        c["name"].get<std::string>().find("complexity") != std::string::npos ||
        c["name"].get<std::string>().find("equal") != std::string::npos) {
      EXPECT_TRUE(c["pass"].get<bool>()) << c.dump();
    }
  }
}

}  // namespace
}  // namespace pwrec
