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

#include <map>
#include <set>

#include "pwrec/codec.hpp"
#include "pwrec/error.hpp"
#include "pwrec/protocols.hpp"
#include "test_util.hpp"

namespace pwrec {
namespace {

mpz_class powm(const mpz_class& b, const mpz_class& e, const mpz_class& m) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class invm(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// The unmasked share alpha_i a correct character reveals.
mpz_class unmasked(const RecoveryRecord& rec, std::size_t i, char c) {
  const Field f = rec.pk.params.field();
  return (rec.ys[i].value + position_mask(f, rec.v2, i + 1, c).value) % f.q;
}

// Straight-line decryption of the record from t correct positions.
std::optional<std::string> oracle_decrypt(const RecoveryRecord& rec, const std::string& p,
                                          std::vector<std::size_t> positions) {
  const GroupParams& gp = rec.pk.params;
  const Field f = gp.field();
  mpz_class alpha = 0;
  for (std::size_t i : positions) {
    mpz_class num = 1;
    mpz_class den = 1;
    const mpz_class xi = position_coordinate(f, rec.v1, i + 1, p[i]).value;
    for (std::size_t j : positions) {
      if (j == i) continue;
      const mpz_class xj = position_coordinate(f, rec.v1, j + 1, p[j]).value;
      num = num * (f.q - xj) % f.q;
      den = den * ((xi - xj) % f.q + f.q) % f.q;
    }
    alpha = (alpha + unmasked(rec, i, p[i]) * num % f.q * invm(den, f.q)) % f.q;
  }
  if (powm(gp.g, alpha, gp.p) != rec.pk.h.value) return std::nullopt;
  const mpz_class s = powm(rec.c.a.value, alpha, gp.p);
  const mpz_class m = rec.c.b.value * invm(s, gp.p) % gp.p;
  const mpz_class v = (m <= gp.q ? m : gp.p - m) - 1;
  return decode_password(rec.spec, v);
}

class ProtocolsTest : public ::testing::Test {
 protected:
  GroupParams params_ = named_params("toy");
  PasswordSpec spec_;
  DeterministicRng rng_{42};
};

TEST_F(ProtocolsTest, HashLogin) {
  const RecoveryRecord rec = hpr_register(spec_, params_, "alice", "Tr0ub4d&", rng_);
  EXPECT_TRUE(hpr_login(rec, "alice", "Tr0ub4d&"));
  EXPECT_FALSE(hpr_login(rec, "alice", "Tr0ub4d!"));
  EXPECT_FALSE(hpr_login(rec, "alice", ""));
  try {
    hpr_login(rec, "bob", "Tr0ub4d&");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kUnknownLogin);
  }
}

TEST_F(ProtocolsTest, RegistrationsDiffer) {
  const RecoveryRecord a = hpr_register(spec_, params_, "alice", "Tr0ub4d&", rng_);
  const RecoveryRecord b = hpr_register(spec_, params_, "alice", "Tr0ub4d&", rng_);
  EXPECT_NE(a.pk.h, b.pk.h);
  EXPECT_NE(a.v1, b.v1);
  EXPECT_NE(a.v2, b.v2);
  EXPECT_NE(a.c, b.c);
}

TEST_F(ProtocolsTest, RecordDecryptsByStraightLineOracle) {
  const PasswordSpec spec{default_alphabet(), 4, 2};
  for (int trial = 0; trial < 20; ++trial) {
    const std::string p = test::random_password(spec, rng_);
    const RecoveryRecord rec = hpr_register(spec, params_, "u", p, rng_);
    EXPECT_EQ(oracle_decrypt(rec, p, {0, 1}), p);
    EXPECT_EQ(oracle_decrypt(rec, p, {1, 3}), p);
  }
}

TEST_F(ProtocolsTest, MaskCancellation) {
  // Every y_i + g_i(p_i) lies on the polynomial whose constant term is the
  // secret key behind pk.
  const std::string p = "Tr0ub4d&";
  const RecoveryRecord rec = hpr_register(spec_, params_, "u", p, rng_);
  const Field f = params_.field();
  std::vector<Scalar> xs;
  std::vector<Scalar> alphas;
  for (std::size_t i = 0; i < spec_.n; ++i) {
    xs.push_back(position_coordinate(f, rec.v1, i + 1, p[i]));
    alphas.push_back(Scalar{unmasked(rec, i, p[i])});
  }
  const std::span<const Scalar> bx(xs.data(), spec_.t);
  const std::span<const Scalar> by(alphas.data(), spec_.t);
  EXPECT_EQ(pow_g(params_, interpolate_at(f, bx, by, Scalar{0})), rec.pk.h);
  for (std::size_t j = spec_.t; j < spec_.n; ++j) {
    EXPECT_EQ(interpolate_at(f, bx, by, xs[j]), alphas[j]);
  }
}

TEST_F(ProtocolsTest, ServerResponse) {
  const std::string p = "Tr0ub4d&";
  const RecoveryRecord rec = hpr_register(spec_, params_, "u", p, rng_);
  const std::string guess = "Tr0ubXX&";
  ExponentiationMeter meter;
  const RecoveryResponse resp = hpr_server_respond(rec, guess, rng_);
  EXPECT_EQ(meter.elapsed(), spec_.n + 2);
  ASSERT_EQ(resp.partials.size(), spec_.n);
  EXPECT_NE(resp.c_prime, rec.c);
  for (std::size_t i = 0; i < spec_.n; ++i) {
    const mpz_class genuine = powm(resp.c_prime.a.value, unmasked(rec, i, p[i]), params_.p);
    EXPECT_EQ(resp.partials[i].value == genuine, guess[i] == p[i]) << i;
  }
  EXPECT_THROW(hpr_server_respond(rec, "short", rng_), Error);
  EXPECT_THROW(hpr_server_respond(rec, "Tr0ub4d\x01", rng_), Error);
}

TEST_F(ProtocolsTest, WrongPositionPartialsUniform) {
  const GroupParams toy{23, 11, 2};
  const PasswordSpec spec{"ab", 3, 2};
  std::map<unsigned long, std::uint64_t> counts;
  for (int i = 0; i < 3334; ++i) {
    const RecoveryRecord rec = hpr_register(spec, toy, "u", "aab", rng_);
    const RecoveryResponse resp = hpr_server_respond(rec, "bba", rng_);
    for (const auto& d : resp.partials) ++counts[d.value.get_ui()];
  }
  ASSERT_EQ(counts.size(), 11u);
  std::vector<std::uint64_t> v;
  for (auto& [k, c] : counts) v.push_back(c);
  EXPECT_GT(test::uniform_p_value(v), 0.001);
}

TEST_F(ProtocolsTest, HashRecoverySimulation) {
  const PasswordSpec spec{default_alphabet(), 4, 2};
  for (int trial = 0; trial < 1000; ++trial) {
    const std::string p = test::random_password(spec, rng_);
    const RecoveryRecord rec = hpr_register(spec, params_, "u", p, rng_);
    const std::string good = test::with_changes(spec, p, 2, rng_);
    const std::string bad = test::with_changes(spec, p, 3, rng_);
    ASSERT_EQ(hpr_client_recover(spec, hpr_server_respond(rec, good, rng_), good).password, p);
    ASSERT_FALSE(hpr_client_recover(spec, hpr_server_respond(rec, bad, rng_), bad).password);
  }
}

TEST_F(ProtocolsTest, ExactGuessUsesOneSubset) {
  const RecoveryRecord rec = hpr_register(spec_, params_, "u", "Tr0ub4d&", rng_);
  const auto out = hpr_client_recover(spec_, hpr_server_respond(rec, "Tr0ub4d&", rng_), "Tr0ub4d&");
  EXPECT_EQ(out.password, "Tr0ub4d&");
  EXPECT_EQ(out.subsets_tried, 1u);
}

TEST_F(ProtocolsTest, SimpleRecovery) {
  const PasswordSpec spec{default_alphabet(), 4, 2};
  for (int trial = 0; trial < 200; ++trial) {
    const std::string p = test::random_password(spec, rng_);
    const SimpleRecord rec = spr_simple_register(spec, params_, "u", p, rng_);
    EXPECT_EQ(spr_simple_recover(rec, p), p);
    EXPECT_EQ(spr_simple_recover(rec, test::with_changes(spec, p, 2, rng_)), p);
    EXPECT_FALSE(spr_simple_recover(rec, test::with_changes(spec, p, 3, rng_)));
  }
}

TEST_F(ProtocolsTest, ChallengeResponse) {
  const ChalRespAuth auth = cr_register(params_, "Tr0ub4d&");
  EXPECT_TRUE(is_element(params_, auth.d.value));
  const Challenge ch = cr_challenge(params_, rng_, Clock::now());
  EXPECT_EQ(ch.b, pow_g(params_, ch.c));
  EXPECT_TRUE(cr_verify(params_, ch, auth.d, cr_prove(params_, ch.b, "Tr0ub4d&")));
  EXPECT_FALSE(cr_verify(params_, ch, auth.d, cr_prove(params_, ch.b, "Tr0ub4d!")));
  // (g^c)^{h(p)} = (g^{h(p)})^c
  const Scalar h = cr_hash(params_.field(), "Tr0ub4d&");
  EXPECT_EQ(powm(powm(params_.g, ch.c.value, params_.p), h.value, params_.p),
            powm(powm(params_.g, h.value, params_.p), ch.c.value, params_.p));
}

TEST_F(ProtocolsTest, DistinctPasswordsDistinctVerifiers) {
  std::set<mpz_class> seen;
  for (int i = 0; i < 1000; ++i) {
    seen.insert(cr_register(params_, "pw" + std::to_string(i)).d.value);
  }
  EXPECT_EQ(seen.size(), 1000u);
}

TEST_F(ProtocolsTest, ChallengesAreSingleUseAndExpire) {
  ChallengeTable table;
  const auto now = Clock::now();
  const std::string id = table.issue("u", cr_challenge(params_, rng_, now + std::chrono::seconds(5)), rng_);
  EXPECT_EQ(table.outstanding(), 1u);
  EXPECT_EQ(table.redeem(id, now).login, "u");
  try {
    table.redeem(id, now);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kReplayed);
  }
  const std::string old = table.issue("u", cr_challenge(params_, rng_, now), rng_);
  try {
    table.redeem(old, now + std::chrono::seconds(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kExpired);
  }
  EXPECT_EQ(table.outstanding(), 0u);
}

TEST_F(ProtocolsTest, CrRecoverySimulation) {
  const PasswordSpec spec{"xyz", 4, 2};
  for (int trial = 0; trial < 200; ++trial) {
    const std::string p = test::random_password(spec, rng_);
    const RecoveryRecord rec = crpr_register(spec, params_, "u", p, rng_);
    EXPECT_TRUE(std::holds_alternative<ChalRespAuth>(rec.auth));
    std::uint64_t exps = 0;
    const std::string good = test::with_changes(spec, p, 2, rng_);
    ASSERT_EQ(crpr_recover_in_process(rec, good, rng_, &exps).password, p);
    EXPECT_LE(exps, 3 * spec.n * spec.alphabet_size() + 8);
    EXPECT_GE(exps, spec.n * spec.alphabet_size());
    ASSERT_FALSE(crpr_recover_in_process(rec, test::with_changes(spec, p, 3, rng_), rng_).password);
  }
}

TEST_F(ProtocolsTest, CrServerSessionGuards) {
  const PasswordSpec spec{"xyz", 4, 2};
  const RecoveryRecord rec = crpr_register(spec, params_, "u", "xyzx", rng_);
  CrprServerSession server(rec, "sess", rng_);
  CrprClientSession client(spec, "xyzz");
  client.begin(server.start());
  const GroupElement b = client.choose(0, rng_);
  client.receive(0, server.respond(0, b, rng_));
  try {
    server.respond(0, b, rng_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kProtocol);
  }
  EXPECT_THROW(server.respond(4, b, rng_), Error);
  EXPECT_FALSE(server.complete());
  for (std::size_t i = 1; i < 4; ++i) client.receive(i, server.respond(i, client.choose(i, rng_), rng_));
  EXPECT_TRUE(server.complete());
  EXPECT_EQ(client.finish().password, "xyzx");
}

}  // namespace
}  // namespace pwrec
