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
#include "pwrec/harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <boost/math/distributions/chi_squared.hpp>

#include "pwrec/error.hpp"
#include "pwrec/protocols.hpp"

namespace pwrec {
namespace {

constexpr double kZ95 = 1.959963984540054;
constexpr std::uint64_t kBins = 8;

// Trial-local randomness, identical for both values of b.
DeterministicRng trial_rng(const char* game, std::uint64_t seed, std::size_t trial) {
  return DeterministicRng(std::string(game) + "|" + std::to_string(seed) + "|" +
                          std::to_string(trial));
}

bool non_uniform(const std::vector<std::uint64_t>& counts) {
  return chi_square_p_value(counts) < 0.5;
}

std::uint64_t bin_of(const mpz_class& v) { return mpz_fdiv_ui(v.get_mpz_t(), kBins); }

// Every t-subset interpolation of one oracle answer.
std::vector<GroupElement> combined_plaintexts(const PublicKey& pk, const OracleOutput& out,
                                              std::size_t t) {
  std::vector<GroupElement> seen;
  combine(pk, out.c, out.partials, t, [&](const GroupElement& m) {
    seen.push_back(m);
    return false;
  });
  return seen;
}

}  // namespace

void PairedEstimator::add(bool d_b0, bool d_b1) {
  const double z = (static_cast<double>(d_b1) - static_cast<double>(d_b0)) / 2.0;
  ++n_;
  sum_ += z;
  sum_sq_ += z * z;
}

AdvantageEstimate PairedEstimator::result(std::string distinguisher) const {
  AdvantageEstimate e;
  e.distinguisher = std::move(distinguisher);
  e.trials = n_;
  if (n_ == 0) return e;
  const double n = static_cast<double>(n_);
  e.advantage = sum_ / n;
  if (n_ > 1) {
    const double var = std::max(0.0, (sum_sq_ - n * e.advantage * e.advantage) / (n - 1));
    e.half_width = kZ95 * std::sqrt(var / n);
  }
  return e;
}

double chi_square_statistic(const std::vector<std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0 || counts.empty()) return 0;
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  double stat = 0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

double chi_square_p_value(const std::vector<std::uint64_t>& counts) {
  if (counts.size() < 2) return 1.0;
  boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, chi_square_statistic(counts)));
}

std::string distinguisher_name(Distinguisher d) {
  switch (d) {
    case Distinguisher::kAttemptCombine: return "attempt-combine";
    case Distinguisher::kChiSquare: return "chi-square";
    case Distinguisher::kOffsetCorrelation: return "offset-correlation";
    case Distinguisher::kInterpolation: return "interpolation";
  }
  return "?";
}

std::vector<AdvantageEstimate> run_equivocation_game(const EquivocationGameConfig& cfg) {
  if (cfg.game != 1 && cfg.game != 2) throw Error(Errc::kInvalidArgument, "game must be 1 or 2");
  const GroupParams params = named_params(cfg.params);
  const GroupElement m0 = encode_message(params, mpz_class(5));
  const GroupElement m1 = encode_message(params, mpz_class(6));
  std::vector<std::size_t> indices(cfg.t - 1);
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;

  PairedEstimator combine_est;
  PairedEstimator chi_est;
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    bool d_combine[2];
    bool d_chi[2];
    for (int b = 0; b < 2; ++b) {
      DeterministicRng rng = trial_rng("def1", cfg.seed, trial);
      const EquivocationOracle oracle(params, cfg.t, cfg.n, rng, cfg.fault);
      std::size_t hits0 = 0;
      std::size_t hits1 = 0;
      std::vector<std::uint64_t> bins(kBins, 0);
      for (std::size_t q = 0; q < cfg.queries; ++q) {
        OracleOutput out;
        if (cfg.game == 1) {
          out = oracle.I(b == 1 ? m1 : m0, indices, rng);
        } else {
          out = b == 1 ? oracle.F(m0, rng) : oracle.I(m0, indices, rng);
        }
        for (const auto& pt : combined_plaintexts(oracle.pk(), out, cfg.t)) {
          hits0 += pt == m0;
          hits1 += pt == m1;
          ++bins[bin_of(div(params, pt, m0).value)];
        }
      }
      d_combine[b] = cfg.game == 1 ? hits1 > hits0 : hits0 > 0;
      d_chi[b] = non_uniform(bins);
    }
    combine_est.add(d_combine[0], d_combine[1]);
    chi_est.add(d_chi[0], d_chi[1]);
  }
  return {combine_est.result(distinguisher_name(Distinguisher::kAttemptCombine)),
          chi_est.result(distinguisher_name(Distinguisher::kChiSquare))};
}

namespace {

// Do (h_i(p_i), offset_i) and (0, encode(p)) lie on one polynomial of
// degree t-1? Uses only what the blob publishes.
bool offsets_fit(const LocalBlob& blob, std::string_view p) {
  const Field& f = blob.field;
  const PasswordSpec& spec = blob.spec;
  std::vector<Scalar> xs{Scalar{0}};
  std::vector<Scalar> ys{make_scalar(f, encode_password(spec, p))};
  for (std::size_t i = 0; i < spec.n; ++i) {
    xs.push_back(position_coordinate(f, blob.v, i + 1, p[i]));
    ys.push_back(blob.offsets[i]);
  }
  if (has_duplicates(xs)) return false;
  const std::span<const Scalar> bx(xs.data(), spec.t);
  const std::span<const Scalar> by(ys.data(), spec.t);
  for (std::size_t j = spec.t; j < xs.size(); ++j) {
    if (interpolate_at(f, bx, by, xs[j]) != ys[j]) return false;
  }
  return true;
}

}  // namespace

std::vector<AdvantageEstimate> run_local_pr_game(const LocalGameConfig& cfg) {
  const Field field = named_params(cfg.params).field();
  cfg.spec.validate(field);
  cfg.spec.check_password(cfg.p0);
  cfg.spec.check_password(cfg.p1);

  PairedEstimator corr_est;
  PairedEstimator chi_est;
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    bool d_corr[2];
    bool d_chi[2];
    for (int b = 0; b < 2; ++b) {
      DeterministicRng rng = trial_rng("local", cfg.seed, trial);
      const std::string& pb = b == 1 ? cfg.p1 : cfg.p0;
      LocalBlob blob = local_register(cfg.spec, field, pb, rng);
      if (cfg.unmasked_offsets) {
        for (std::size_t i = 0; i < cfg.spec.n; ++i) {
          blob.offsets[i] =
              add(field, blob.offsets[i], position_mask(field, blob.v, i + 1, pb[i]));
        }
      }
      d_corr[b] = offsets_fit(blob, cfg.p1) && !offsets_fit(blob, cfg.p0);
      std::vector<std::uint64_t> bins(kBins, 0);
      for (const auto& o : blob.offsets) ++bins[bin_of(o.value)];
      d_chi[b] = non_uniform(bins);
    }
    corr_est.add(d_corr[0], d_corr[1]);
    chi_est.add(d_chi[0], d_chi[1]);
  }
  return {corr_est.result(distinguisher_name(Distinguisher::kOffsetCorrelation)),
          chi_est.result(distinguisher_name(Distinguisher::kChiSquare))};
}

std::vector<AdvantageEstimate> run_assumption_sanity(const AssumptionGameConfig& cfg) {
  if (cfg.t == 0 || cfg.n < cfg.t) throw Error(Errc::kInvalidArgument, "need 1 <= t <= n");
  const Field field = named_params(cfg.params).field();
  const Scalar a0 = make_scalar(field, mpz_class(static_cast<unsigned long>(cfg.alpha)));
  const Scalar a1 = make_scalar(field, mpz_class(static_cast<unsigned long>(cfg.alpha_prime)));

  PairedEstimator interp_est;
  PairedEstimator chi_est;
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    bool d_interp[2];
    bool d_chi[2];
    for (int b = 0; b < 2; ++b) {
      DeterministicRng rng = trial_rng("assumption", cfg.seed, trial);
      const AssumptionInstance inst =
          sample_assumption_instance(cfg.n, cfg.m, cfg.t, b == 1 ? a1 : a0, field, rng);
      std::vector<Scalar> xs;
      std::vector<Scalar> ys;
      for (std::size_t i = 0; i < cfg.t; ++i) {
        xs.push_back(inst.subsets[i].front().x);
        ys.push_back(inst.subsets[i].front().y);
      }
      d_interp[b] = !has_duplicates(xs) && interpolate_at(field, xs, ys, Scalar{0}) == a1;
      std::vector<std::uint64_t> bins(kBins, 0);
      for (const auto& subset : inst.subsets) {
        for (const auto& pt : subset) ++bins[bin_of(pt.y.value)];
      }
      d_chi[b] = non_uniform(bins);
    }
    interp_est.add(d_interp[0], d_interp[1]);
    chi_est.add(d_chi[0], d_chi[1]);
  }
  return {interp_est.result(distinguisher_name(Distinguisher::kInterpolation)),
          chi_est.result(distinguisher_name(Distinguisher::kChiSquare))};
}

namespace {

// p with exactly k positions replaced by other alphabet characters.
std::string perturb(const PasswordSpec& spec, const std::string& p, std::size_t k, Rng& rng) {
  std::vector<std::size_t> pos(spec.n);
  for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(pos[i], pos[i + rng.below(static_cast<std::uint64_t>(spec.n - i))]);
  }
  std::string out = p;
  const std::size_t m = spec.alphabet_size();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t cur = *spec.index_of(out[pos[i]]);
    out[pos[i]] = spec.alphabet[(cur + 1 + rng.below(static_cast<std::uint64_t>(m - 1))) % m];
  }
  return out;
}

std::string random_password(const PasswordSpec& spec, Rng& rng) {
  std::string p(spec.n, ' ');
  for (auto& c : p) c = spec.alphabet[rng.below(static_cast<std::uint64_t>(spec.alphabet_size()))];
  return p;
}

}  // namespace

ComplexityReport measure_complexity(const std::string& protocol, const PasswordSpec& spec,
                                    const GroupParams& params, std::size_t trials,
                                    std::uint64_t seed) {
  if (protocol != "hash" && protocol != "cr") {
    throw Error(Errc::kInvalidArgument, "protocol must be hash or cr");
  }
  if (spec.alphabet_size() < 2) throw Error(Errc::kInvalidArgument, "alphabet too small");
  ComplexityReport rep;
  rep.protocol = protocol;
  rep.n = spec.n;
  rep.t = spec.t;
  rep.alphabet = spec.alphabet_size();
  rep.min_server_exponentiations = UINT64_MAX;

  for (std::size_t trial = 0; trial < trials; ++trial) {
    DeterministicRng rng = trial_rng("complexity", seed, trial);
    const std::string p = random_password(spec, rng);
    const std::string near = perturb(spec, p, spec.n - spec.t, rng);
    for (const std::string* guess : {&p, &near}) {
      std::uint64_t exps = 0;
      RecoverOutcome out;
      if (protocol == "hash") {
        const RecoveryRecord rec = hpr_register(spec, params, "user", p, rng);
        ExponentiationMeter meter;
        const RecoveryResponse resp = hpr_server_respond(rec, *guess, rng);
        exps = meter.elapsed();
        out = hpr_client_recover(spec, resp, *guess);
      } else {
        const RecoveryRecord rec = crpr_register(spec, params, "user", p, rng);
        out = crpr_recover_in_process(rec, *guess, rng, &exps);
      }
      if (out.password != p) throw Error(Errc::kProtocol, "recovery failed while measuring");
      rep.min_server_exponentiations = std::min(rep.min_server_exponentiations, exps);
      rep.max_server_exponentiations = std::max(rep.max_server_exponentiations, exps);
      rep.max_subsets = std::max(rep.max_subsets, out.subsets_tried);
      if (guess == &p) rep.max_exact_subsets = std::max(rep.max_exact_subsets, out.subsets_tried);
    }
    ++rep.trials;
  }
  if (rep.trials == 0) rep.min_server_exponentiations = 0;
  return rep;
}

namespace {

Json estimate_json(const AdvantageEstimate& e) {
  return {{"distinguisher", e.distinguisher},
          {"advantage", e.advantage},
          {"half_width", e.half_width},
          {"ci", {e.low(), e.high()}},
          {"trials", e.trials}};
}

constexpr double kMaxHalfWidth = 0.02;
constexpr double kDetectAdvantage = 0.4;

// Every distinguisher's interval is narrow and contains 0.
Json indistinguishable(const std::string& name, const std::vector<AdvantageEstimate>& es) {
  Json j{{"name", name}, {"expect", "indistinguishable"}, {"estimates", Json::array()}};
  bool pass = true;
  for (const auto& e : es) {
    j["estimates"].push_back(estimate_json(e));
    pass = pass && e.contains_zero() && e.half_width < kMaxHalfWidth;
  }
  j["pass"] = pass;
  return j;
}

// Some distinguisher wins by a wide margin.
Json detected(const std::string& name, const std::vector<AdvantageEstimate>& es) {
  Json j{{"name", name}, {"expect", "detected"}, {"estimates", Json::array()}};
  bool pass = false;
  for (const auto& e : es) {
    j["estimates"].push_back(estimate_json(e));
    pass = pass || e.advantage > kDetectAdvantage;
  }
  j["pass"] = pass;
  return j;
}

// Estimates that must vanish exactly.
Json exactly_zero(const std::string& name, const std::vector<AdvantageEstimate>& es) {
  Json j{{"name", name}, {"expect", "zero"}, {"estimates", Json::array()}};
  bool pass = true;
  for (const auto& e : es) {
    j["estimates"].push_back(estimate_json(e));
    pass = pass && e.advantage == 0.0;
  }
  j["pass"] = pass;
  return j;
}

Json complexity_json(const ComplexityReport& r, bool pass) {
  return {{"name", "complexity-" + r.protocol},
          {"n", r.n},
          {"t", r.t},
          {"alphabet", r.alphabet},
          {"trials", r.trials},
          {"min_server_exponentiations", r.min_server_exponentiations},
          {"max_server_exponentiations", r.max_server_exponentiations},
          {"max_subsets", r.max_subsets},
          {"max_exact_subsets", r.max_exact_subsets},
          {"pass", pass}};
}

}  // namespace

Json run_selftest(const SelftestConfig& cfg) {
  Json checks = Json::array();

  EquivocationGameConfig g;
  g.trials = cfg.trials;
  g.seed = cfg.seed;
  g.game = 1;
  checks.push_back(indistinguishable("equivocation-game-1", run_equivocation_game(g)));
  g.game = 2;
  checks.push_back(indistinguishable("equivocation-game-2", run_equivocation_game(g)));
  g.fault = OracleFault::kFReusesGenuineShares;
  checks.push_back(detected("equivocation-game-2-leaky-F", run_equivocation_game(g)));

  LocalGameConfig l;
  l.trials = cfg.trials;
  l.seed = cfg.seed;
  checks.push_back(indistinguishable("local-registration", run_local_pr_game(l)));
  l.unmasked_offsets = true;
  checks.push_back(detected("local-registration-unmasked", run_local_pr_game(l)));
  l.unmasked_offsets = false;
  l.p1 = l.p0;
  checks.push_back(exactly_zero("local-registration-equal-passwords", run_local_pr_game(l)));

  AssumptionGameConfig a;
  a.trials = cfg.trials;
  a.seed = cfg.seed;
  checks.push_back(indistinguishable("assumption-ensembles", run_assumption_sanity(a)));
  a.m = 1;
  checks.push_back(detected("assumption-no-chaff", run_assumption_sanity(a)));
  a.m = 16;
  a.alpha_prime = a.alpha;
  checks.push_back(exactly_zero("assumption-equal-secrets", run_assumption_sanity(a)));

  const GroupParams toy = named_params("toy");
  const PasswordSpec spec;
  const std::uint64_t bound = binomial(spec.n, spec.t);
  const ComplexityReport h = measure_complexity("hash", spec, toy, cfg.complexity_trials, cfg.seed);
  checks.push_back(complexity_json(
      h, h.min_server_exponentiations == spec.n + 2 && h.max_server_exponentiations == spec.n + 2 &&
             h.max_subsets <= bound && h.max_exact_subsets == 1));
  const ComplexityReport c = measure_complexity("cr", spec, toy, cfg.complexity_trials, cfg.seed);
  checks.push_back(complexity_json(
      c, c.max_server_exponentiations <= 3 * spec.n * spec.alphabet_size() + 8 &&
             c.min_server_exponentiations >= spec.n * spec.alphabet_size() &&
             c.max_subsets <= bound && c.max_exact_subsets == 1));

  bool pass = true;
  for (const auto& ch : checks) pass = pass && ch["pass"].get<bool>();
  return {{"pass", pass}, {"trials", cfg.trials}, {"seed", cfg.seed}, {"checks", checks}};
}

}  // namespace pwrec
