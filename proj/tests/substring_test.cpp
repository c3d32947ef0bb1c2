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

#include "pwrec/error.hpp"
#include "pwrec/substring.hpp"
#include "test_util.hpp"

namespace pwrec {
namespace {

TEST(Paillier, ExhaustiveToyModulus) {
  const PaillierKeys keys = paillier_keys_from_primes(7, 11);
  ASSERT_EQ(keys.pk.n, 77);
  DeterministicRng rng(1);
  for (unsigned long m = 0; m < 77; ++m) {
    const mpz_class c = paillier_encrypt(keys.pk, mpz_class(m), rng);
    ASSERT_EQ(paillier_decrypt(keys, c), m);
    for (unsigned long k = 0; k < 77; k += 7) {
      const mpz_class other = paillier_encrypt(keys.pk, mpz_class(k), rng);
      ASSERT_EQ(paillier_decrypt(keys, paillier_add(keys.pk, c, other)), (m + k) % 77);
      ASSERT_EQ(paillier_decrypt(keys, paillier_scale(keys.pk, c, mpz_class(k))), (m * k) % 77);
    }
  }
  // g = N + 1 with r = 1: E(m) = 1 + mN mod N^2.
  EXPECT_EQ(paillier_encrypt(keys.pk, mpz_class(3), mpz_class(1)), 1 + 3 * 77);
  EXPECT_THROW(paillier_encrypt(keys.pk, mpz_class(77), rng), Error);
  EXPECT_THROW(paillier_keys_from_primes(7, 7), Error);
}

TEST(Paillier, RandomizedAtFullSize) {
  DeterministicRng rng(2);
  const PaillierKeys keys = paillier_keygen(1024, rng);
  EXPECT_EQ(mpz_sizeinbase(keys.pk.n.get_mpz_t(), 2), 1024u);
  for (int i = 0; i < 20; ++i) {
    const mpz_class a = rng.below(keys.pk.n);
    const mpz_class b = rng.below(keys.pk.n);
    const mpz_class ca = paillier_encrypt(keys.pk, a, rng);
    EXPECT_NE(ca, paillier_encrypt(keys.pk, a, rng));
    EXPECT_EQ(paillier_decrypt(keys, ca), a);
    EXPECT_EQ(paillier_decrypt(keys, paillier_add(keys.pk, ca, paillier_encrypt(keys.pk, b, rng))),
              (a + b) % keys.pk.n);
  }
}

TEST(SymmetricCipher, KnownAnswerAndRoundTrip) {
  const mpz_class key("1234567890abcdef", 16);
  // Independent script over the documented keystream and verifier layout.
  EXPECT_EQ(sym_encrypt(key, "abc"), mpz_class("1d5a1e479d379e7def4ccc3904b985f8f49e37d", 16));
  EXPECT_EQ(sym_decrypt(key, sym_encrypt(key, "abc")), "abc");
  EXPECT_EQ(sym_decrypt(key, sym_encrypt(key, "")), "");
  EXPECT_FALSE(sym_decrypt(key + 1, sym_encrypt(key, "abc")));
  EXPECT_FALSE(sym_decrypt(key, mpz_class(0)));
  const mpz_class blob = sym_encrypt(key, "Tr0ub4d&");
  EXPECT_LE(mpz_sizeinbase(blob.get_mpz_t(), 2), 8u * (8 + 16) + 8);
  DeterministicRng rng(3);
  int accepted = 0;
  for (int i = 0; i < 1000; ++i) accepted += sym_decrypt(rng.below(mpz_class(1) << 200), blob).has_value();
  EXPECT_EQ(accepted, 0);
}

class SubstringTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    DeterministicRng rng(4);
    keys_ = new PaillierKeys(paillier_keygen(1024, rng));
  }
  static void TearDownTestSuite() { delete keys_; }

  static PaillierKeys* keys_;
  GroupParams params_ = named_params("toy");
  DeterministicRng rng_{5};
};

PaillierKeys* SubstringTest::keys_ = nullptr;

TEST_F(SubstringTest, Windows) {
  EXPECT_EQ(window_count(PasswordSpec{"abc", 6, 3}), 4u);
  EXPECT_EQ(window_count(PasswordSpec{"abc", 3, 3}), 1u);
  const SubstringRecord rec = spr_register(PasswordSpec{"abc", 6, 3}, params_, "u", "abcabc");
  EXPECT_EQ(rec.tags.size(), 4u);
  EXPECT_EQ(rec.blobs.size(), 4u);
  // Windows 0 and 3 hold the same characters but use different tags.
  EXPECT_NE(rec.tags[0], rec.tags[3]);
}

TEST_F(SubstringTest, RequestDecryptsToTags) {
  const PasswordSpec spec{"abc", 6, 3};
  const SubstringSession s = spr_client_request(spec, "abcabc", *keys_, rng_);
  ASSERT_EQ(s.request.ciphertexts.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(paillier_decrypt(s.keys, s.request.ciphertexts[i]), window_tag(spec, "abcabc", i));
  }
  const SubstringSession again = spr_client_request(spec, "abcabc", *keys_, rng_);
  EXPECT_NE(again.request.ciphertexts, s.request.ciphertexts);
}

TEST_F(SubstringTest, MatchingWindowReturnsBlobExactly) {
  const PasswordSpec spec{"abc", 6, 3};
  const SubstringRecord rec = spr_register(spec, params_, "u", "abcabc");
  const SubstringSession s = spr_client_request(spec, "abcbbb", *keys_, rng_);
  const auto resp = spr_server_respond(rec, s.request, rng_);
  EXPECT_EQ(paillier_decrypt(s.keys, resp[0]), rec.blobs[0]);
  EXPECT_NE(paillier_decrypt(s.keys, resp[1]), rec.blobs[1]);
  EXPECT_EQ(spr_client_finish(spec, s.keys, resp, "abcbbb"), "abcabc");
}

TEST_F(SubstringTest, NonMatchingWindowsNeverVerify) {
  const PasswordSpec spec{"abc", 4, 2};
  for (int trial = 0; trial < 200; ++trial) {
    const std::string p = test::random_password(spec, rng_);
    // Positions 1 and 2 meet every window of width 2.
    std::string guess = p;
    guess[1] = guess[1] == 'a' ? 'b' : 'a';
    guess[2] = guess[2] == 'a' ? 'b' : 'a';
    const SubstringRecord rec = spr_register(spec, params_, "u", p);
    const SubstringSession s = spr_client_request(spec, guess, *keys_, rng_);
    const auto resp = spr_server_respond(rec, s.request, rng_);
    for (std::size_t i = 0; i < resp.size(); ++i) {
      ASSERT_NE(paillier_decrypt(s.keys, resp[i]), rec.blobs[i]);
    }
    ASSERT_FALSE(spr_client_finish(spec, s.keys, resp, guess));
  }
}

TEST_F(SubstringTest, RejectsBadRequests) {
  const PasswordSpec spec{"abc", 4, 2};
  const SubstringRecord rec = spr_register(spec, params_, "u", "abca");
  SubstringSession s = spr_client_request(spec, "abca", *keys_, rng_);
  s.request.ciphertexts.pop_back();
  EXPECT_THROW(spr_server_respond(rec, s.request, rng_), Error);
  const PaillierKeys small = paillier_keygen(512, rng_);
  const SubstringSession weak = spr_client_request(spec, "abca", small, rng_);
  EXPECT_THROW(spr_server_respond(rec, weak.request, rng_), Error);
}

}  // namespace
}  // namespace pwrec
