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
#ifndef PWREC_HARNESS_HPP_
#define PWREC_HARNESS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pwrec/codec.hpp"
#include "pwrec/local_recovery.hpp"
#include "pwrec/threshold.hpp"

namespace pwrec {

/**
 * Empirical advantage of a distinguisher D, estimated as
 * 1/2 (Pr[D=1 | b=1] - Pr[D=1 | b=0]) from paired trials: both values of b
 * are played from the same trial seed, so anything that does not depend on
 * b cancels exactly. Smoke-test statistics, not a security proof.
 */
struct AdvantageEstimate {
  std::string distinguisher;
  double advantage = 0;
  double half_width = 0;  // 95% normal interval
  std::uint64_t trials = 0;

  double low() const { return advantage - half_width; }
  double high() const { return advantage + half_width; }
  bool contains_zero() const { return low() <= 0 && 0 <= high(); }
};

class PairedEstimator {
 public:
  void add(bool d_b0, bool d_b1);
  AdvantageEstimate result(std::string distinguisher) const;

 private:
  std::uint64_t n_ = 0;
  double sum_ = 0;
  double sum_sq_ = 0;
};

// Pearson statistic of counts against the uniform distribution, and its
// upper-tail probability.
double chi_square_statistic(const std::vector<std::uint64_t>& counts);
double chi_square_p_value(const std::vector<std::uint64_t>& counts);

enum class Distinguisher {
  kAttemptCombine,    // combine every t-subset and look for the known plaintext(s)
  kChiSquare,         // bin combined plaintexts, flag non-uniform batches
  kOffsetCorrelation, // do the raw offsets fit a candidate password's polynomial?
  kInterpolation,     // interpolate one point from each of t subsets at 0
};
std::string distinguisher_name(Distinguisher d);

struct EquivocationGameConfig {
  int game = 1;            // 1: I(m_0) vs I(m_1); 2: I(m) vs F(m)
  std::size_t n = 5;
  std::size_t t = 3;
  std::size_t queries = 4; // challenge queries per trial
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  OracleFault fault = OracleFault::kNone;
  // A random share hits the genuine one with probability 1/q, which at
  // q ~ 1000 is a measurable advantage on its own. 64 bits makes it vanish.
  std::string params = "toy64";
};

// Equivocation games against EquivocationOracle. One estimate per
// distinguisher, all computed from the same transcripts.
std::vector<AdvantageEstimate> run_equivocation_game(const EquivocationGameConfig& config);

struct LocalGameConfig {
  PasswordSpec spec{"abc", 6, 3};
  std::string p0 = "aaaaaa";
  std::string p1 = "bcbcbc";
  std::size_t trials = 10000;
  std::uint64_t seed = 2;
  bool unmasked_offsets = false;  // planted leak: publish s_i instead of s_i - g_i(p_i)
  std::string params = "toy2027";
};

// The adversary picks p0, p1 and sees the blob registered for p_b.
std::vector<AdvantageEstimate> run_local_pr_game(const LocalGameConfig& config);

struct AssumptionGameConfig {
  std::size_t n = 6;
  std::size_t m = 16;
  std::size_t t = 4;
  std::uint64_t alpha = 17;
  std::uint64_t alpha_prime = 404;
  std::size_t trials = 10000;
  std::uint64_t seed = 3;
  std::string params = "toy2027";
};

std::vector<AdvantageEstimate> run_assumption_sanity(const AssumptionGameConfig& config);

struct ComplexityReport {
  std::string protocol;  // "hash" or "cr"
  std::size_t n = 0;
  std::size_t t = 0;
  std::size_t alphabet = 0;
  std::uint64_t trials = 0;
  std::uint64_t min_server_exponentiations = 0;
  std::uint64_t max_server_exponentiations = 0;
  std::uint64_t max_subsets = 0;        // over guesses with >= t matches
  std::uint64_t max_exact_subsets = 0;  // over exact guesses
};

// Server exponentiations per recovery and combiner work, measured on real
// registrations and recoveries.
ComplexityReport measure_complexity(const std::string& protocol, const PasswordSpec& spec,
                                    const GroupParams& params, std::size_t trials,
                                    std::uint64_t seed);

struct SelftestConfig {
  std::size_t trials = 10000;
  std::size_t complexity_trials = 20;
  std::uint64_t seed = 20260101;
};

// Runs the full battery; "pass" at the top level is the conjunction.
Json run_selftest(const SelftestConfig& config);

}  // namespace pwrec

#endif  // PWREC_HARNESS_HPP_
