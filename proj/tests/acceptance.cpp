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
// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>

#include "pwrec/client.hpp"
#include "pwrec/harness.hpp"
#include "pwrec/protocols.hpp"
#include "pwrec/server.hpp"
#include "pwrec/substring.hpp"
#include "test_util.hpp"

namespace pwrec {
namespace {

namespace fs = std::filesystem;
using namespace std::chrono_literals;
using Steady = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

mpz_class powm(const mpz_class& b, const mpz_class& e, const mpz_class& m) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

double seconds_since(Steady::time_point t0) {
  return std::chrono::duration<double>(Steady::now() - t0).count();
}

constexpr std::size_t kTrials = 1000;
const PasswordSpec kSpec;  // |D| = 95, n = 8, t = 5

// Runs one recovery of the named protocol on a fresh registration of p.
std::optional<std::string> recover_once(const std::string& protocol, const std::string& p,
                                        const std::string& guess, Rng& rng,
                                        std::uint64_t* subsets) {
  static const GroupParams gp = named_params("toy");
  if (protocol == "local") {
    const LocalRecoverResult r = local_recover(local_register(kSpec, gp.field(), p, rng), guess);
    *subsets = r.subsets_tried;
    return r.password;
  }
  if (protocol == "hash") {
    const RecoveryRecord rec = hpr_register(kSpec, gp, "u", p, rng);
    const RecoverOutcome r = hpr_client_recover(kSpec, hpr_server_respond(rec, guess, rng), guess);
    *subsets = r.subsets_tried;
    return r.password;
  }
  const RecoveryRecord rec = crpr_register(kSpec, gp, "u", p, rng);
  const RecoverOutcome r = crpr_recover_in_process(rec, guess, rng);
  *subsets = r.subsets_tried;
  return r.password;
}

Verdict completeness() {
  Verdict v;
  DeterministicRng rng("acceptance|completeness");
  for (const char* protocol : {"local", "hash", "cr"}) {
    std::size_t ok = 0;
    std::uint64_t max_subsets = 0;
    for (std::size_t i = 0; i < kTrials; ++i) {
      const std::string p = test::random_password(kSpec, rng);
      // Between t and n matching characters.
      const std::size_t changes = rng.below(std::uint64_t{kSpec.n - kSpec.t + 1});
      const std::string guess = test::with_changes(kSpec, p, changes, rng);
      std::uint64_t subsets = 0;
      ok += recover_once(protocol, p, guess, rng, &subsets) == p;
      max_subsets = std::max(max_subsets, subsets);
    }
    v.detail << " " << protocol << "=" << ok << "/" << kTrials << " (max subsets " << max_subsets
             << ")";
    v.require(ok == kTrials, std::string(protocol) + " missed a recovery");
  }
  return v;
}

Verdict soundness() {
  Verdict v;
  DeterministicRng rng("acceptance|soundness");
  for (const char* protocol : {"local", "hash", "cr"}) {
    std::size_t empty = 0;
    for (std::size_t i = 0; i < kTrials; ++i) {
      const std::string p = test::random_password(kSpec, rng);
      const std::string guess = test::with_changes(kSpec, p, kSpec.n - kSpec.t + 1, rng);
      std::uint64_t subsets = 0;
      empty += !recover_once(protocol, p, guess, rng, &subsets).has_value();
    }
    v.detail << " " << protocol << " empty=" << empty << "/" << kTrials;
    v.require(empty >= kTrials - 1, std::string(protocol) + " recovered from t-1 matches");
  }
  return v;
}

Verdict exponent_interpolation() {
  Verdict v;
  const auto t0 = Steady::now();
  const GroupParams gp{23, 11, 2};
  std::size_t cases = 0;
  std::size_t equal = 0;
  for (unsigned long a0 = 0; a0 < 11; ++a0) {
    for (unsigned long a1 = 0; a1 < 11; ++a1) {
      for (unsigned long x1 = 1; x1 < 11; ++x1) {
        for (unsigned long x2 = 1; x2 < 11; ++x2) {
          if (x1 == x2) continue;
          const std::vector<PartialDecryption> pts{
              {Scalar{x1}, GroupElement{powm(2, (a0 + a1 * x1) % 11, 23)}},
              {Scalar{x2}, GroupElement{powm(2, (a0 + a1 * x2) % 11, 23)}}};
          for (unsigned long x0 = 0; x0 < 11; ++x0) {
            ++cases;
            equal += interpolate_exponent(gp, pts, Scalar{x0}).value ==
                     powm(2, (a0 + a1 * x0) % 11, 23);
          }
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  v.detail << " " << equal << "/" << cases << " in " << secs << " s";
  v.require(equal == cases, "mismatch");
  v.require(secs < 1, "too slow");
  return v;
}

Verdict oblivious_transfer() {
  Verdict v;
  const GroupParams gp = named_params("toy");
  DeterministicRng rng("acceptance|ot");
  const GroupElement common = ot_common(gp, "acceptance");
  std::vector<GroupElement> table;
  for (int j = 0; j < 95; ++j) table.push_back(random_element(gp, rng));
  std::size_t round_trips = 0;
  for (std::size_t choice = 0; choice < 95; ++choice) {
    const OtChoice ch = ot_choose(gp, common, "acceptance", choice, 95, rng);
    round_trips += ot_recover(gp, ch.state, ot_respond(gp, common, ch.b, table, rng)) == table[choice];
  }
  std::size_t leaks = 0;
  for (std::size_t trial = 0; trial < kTrials; ++trial) {
    const std::size_t choice = rng.below(std::uint64_t{95});
    const OtChoice ch = ot_choose(gp, common, "acceptance", choice, 95, rng);
    const OtResponse resp = ot_respond(gp, common, ch.b, table, rng);
    const std::size_t other = (choice + 1 + rng.below(std::uint64_t{94})) % 95;
    leaks += decrypt(gp, ch.state.k, resp.slots[other]) == table[other];
  }
  v.detail << " round trips " << round_trips << "/95, other-slot openings " << leaks << "/"
           << kTrials;
  v.require(round_trips == 95 && leaks == 0, "transfer");
  return v;
}

Verdict identities() {
  Verdict v;
  const GroupParams gp = named_params("toy");
  const Field f = gp.field();
  DeterministicRng rng("acceptance|identities");
  std::size_t mask_checks = 0;
  std::size_t mask_ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::string p = test::random_password(kSpec, rng);
    const RecoveryRecord rec = hpr_register(kSpec, gp, "u", p, rng);
    // alpha_i = y_i + g_i(p_i) must be the points of one degree t-1
    // polynomial whose value at 0 is the secret key behind pk.
    std::vector<Scalar> xs;
    std::vector<Scalar> alphas;
    for (std::size_t i = 0; i < kSpec.n; ++i) {
      xs.push_back(position_coordinate(f, rec.v1, i + 1, p[i]));
      alphas.push_back(add(f, rec.ys[i], position_mask(f, rec.v2, i + 1, p[i])));
    }
    const std::span<const Scalar> bx(xs.data(), kSpec.t);
    const std::span<const Scalar> by(alphas.data(), kSpec.t);
    ++mask_checks;
    mask_ok += pow_g(gp, interpolate_at(f, bx, by, Scalar{0})) == rec.pk.h;
    for (std::size_t j = kSpec.t; j < kSpec.n; ++j) {
      ++mask_checks;
      mask_ok += interpolate_at(f, bx, by, xs[j]) == alphas[j];
    }
  }
  std::size_t cr_ok = 0;
  for (std::size_t trial = 0; trial < kTrials; ++trial) {
    const std::string p = test::random_password(kSpec, rng);
    const ChalRespAuth auth = cr_register(gp, p);
    const Challenge ch = cr_challenge(gp, rng, Clock::now() + 60s);
    const GroupElement proof = cr_prove(gp, ch.b, p);
    cr_ok += proof == pow(gp, auth.d, ch.c) && cr_verify(gp, ch, auth.d, proof);
  }
  v.detail << " mask " << mask_ok << "/" << mask_checks << ", challenge-response " << cr_ok << "/"
           << kTrials;
  v.require(mask_ok == mask_checks && cr_ok == kTrials, "identity");
  return v;
}

Verdict complexity() {
  Verdict v;
  const GroupParams gp = named_params("toy");
  const ComplexityReport h = measure_complexity("hash", kSpec, gp, 200, 61);
  const ComplexityReport c = measure_complexity("cr", kSpec, gp, 50, 62);
  const std::uint64_t subsets = 56;  // C(8, 5)
  v.detail << " hash exps [" << h.min_server_exponentiations << "," << h.max_server_exponentiations
           << "] cr exps [" << c.min_server_exponentiations << "," << c.max_server_exponentiations
           << "] bound " << 3 * 8 * 95 + 8 << ", subsets <= " << std::max(h.max_subsets, c.max_subsets)
           << ", exact guess " << std::max(h.max_exact_subsets, c.max_exact_subsets);
  v.require(h.min_server_exponentiations == kSpec.n + 2 &&
                h.max_server_exponentiations == kSpec.n + 2,
            "hash server work");
  v.require(c.max_server_exponentiations <= 3 * kSpec.n * 95 + 8, "cr server work");
  v.require(h.max_subsets <= subsets && c.max_subsets <= subsets, "subset bound");
  v.require(h.max_exact_subsets == 1 && c.max_exact_subsets == 1, "exact guess");
  return v;
}

Verdict statistical_games() {
  Verdict v;
  const auto t0 = Steady::now();
  const Json report = run_selftest(SelftestConfig{});
  const double secs = seconds_since(t0);
  for (const auto& c : report["checks"]) {
    const std::string name = c["name"];
    if (name.rfind("complexity", 0) == 0) continue;
    v.detail << "\n      " << (c["pass"].get<bool>() ? "ok   " : "FAIL ") << c.dump();
    v.require(c["pass"].get<bool>(), name);
  }
  v.detail << "\n      runtime " << secs << " s";
  v.require(secs < 600, "runtime");
  return v;
}

// Recovery must succeed exactly when some length-t window of the guess
// equals the password's window at the same offset.
bool window_match(const std::string& p, const std::string& g, std::size_t t) {
  for (std::size_t i = 0; i + t <= p.size(); ++i) {
    if (p.compare(i, t, g, i, t) == 0) return true;
  }
  return false;
}

Verdict substring_grid() {
  Verdict v;
  DeterministicRng rng("acceptance|substring");
  const GroupParams gp = named_params("toy");
  // One 1024-bit key pair serves every guess to keep the run short.
  const PaillierKeys keys = paillier_keygen(kMinPaillierBits, rng);
  std::size_t guesses = 0;
  std::size_t exceptions = 0;
  for (std::size_t n : {4u, 6u}) {
    for (std::size_t t : {2u, 3u}) {
      const PasswordSpec spec{"abc", n, t};
      const std::string p = test::random_password(spec, rng);
      const SubstringRecord rec = spr_register(spec, gp, "u", p);
      std::size_t total = 1;
      for (std::size_t i = 0; i < n; ++i) total *= 3;
      for (std::size_t code = 0; code < total; ++code) {
        std::string guess(n, 'a');
        for (std::size_t i = 0, c = code; i < n; ++i, c /= 3) guess[i] = "abc"[c % 3];
        const SubstringSession s = spr_client_request(spec, guess, keys, rng);
        const auto out = spr_client_finish(spec, s.keys, spr_server_respond(rec, s.request, rng), guess);
        const bool expected = window_match(p, guess, t);
        exceptions += expected ? out != p : out.has_value();
        ++guesses;
      }
    }
  }
  v.detail << " " << guesses << " guesses over n in {4,6}, t in {2,3}, exceptions " << exceptions;
  v.require(exceptions == 0, "window predicate");
  return v;
}

Verdict service() {
  Verdict v;
  const fs::path dir = fs::temp_directory_path() / "pwrec-acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::atomic<long> offset{0};
  ServerConfig cfg;
  cfg.store_path = dir / "store.jsonl";
  cfg.policy.max_attempts = 3;
  cfg.clock = [&] { return Clock::time_point{} + 1000h + offset.load() * 1s; };

  std::vector<AccountRecord> before;
  {
    Server server(cfg);
    server.start();
    Client c("127.0.0.1", server.port());
    const auto t0 = Steady::now();
    c.register_hash(kSpec, "alice", "Tr0ub4d&");
    const bool login = c.login_hash("alice", "Tr0ub4d&");
    const auto rec = c.recover_hash(kSpec, "alice", "Tr0uXXd&");
    const double secs = seconds_since(t0);
    v.detail << " happy path " << secs << " s;";
    v.require(login && rec.password == "Tr0ub4d&" && secs < 2, "happy path");

    c.register_cr(kSpec, "bob", "c0rrectH");
    int refused_at = 0;
    for (int i = 1; i <= 5 && !refused_at; ++i) {
      try {
        c.recover_cr(kSpec, "bob", "XXXXXXXX");
      } catch (const Error& e) {
        if (e.code() == Errc::kLocked) refused_at = i;
      }
    }
    offset += 15 * 60 + 1;
    const bool reopened = c.recover_cr(kSpec, "bob", "c0rrXXtH").password == "c0rrectH";
    v.detail << " locked on attempt " << refused_at << " of limit 3, open after expiry "
             << (reopened ? "yes" : "no") << ";";
    v.require(refused_at == 4 && reopened, "attempt policy");
    before = server.store().records();
    server.stop();
  }
  Server server(cfg);
  server.start();
  const bool identical = server.store().records() == before;
  Client c("127.0.0.1", server.port());
  const bool works = c.login_hash("alice", "Tr0ub4d&");
  v.detail << " reload " << before.size() << " records identical " << (identical ? "yes" : "no");
  v.require(identical && works, "restart");
  server.stop();
  fs::remove_all(dir);
  return v;
}

}  // namespace
}  // namespace pwrec

int main() {
  using namespace pwrec;
  ::setenv("PWREC_LOG_LEVEL", "warn", 0);
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"completeness", completeness},
      {"soundness", soundness},
      {"exponent-interpolation", exponent_interpolation},
      {"oblivious-transfer", oblivious_transfer},
      {"identities", identities},
      {"complexity", complexity},
      {"statistical-games", statistical_games},
      {"substring-grid", substring_grid},
      {"service", service},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto t0 = Steady::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " exception: " << e.what();
    }
    failures += !v.pass;
    std::printf("%s %d %s (%.1f s):%s\n", v.pass ? "PASS" : "FAIL", index, name,
                seconds_since(t0), v.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
