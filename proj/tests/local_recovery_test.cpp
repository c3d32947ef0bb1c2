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

#include <set>

#include "pwrec/error.hpp"
#include "pwrec/local_recovery.hpp"
#include "test_util.hpp"

namespace pwrec {
namespace {

// Straight-line Lagrange interpolation at 0, written without the library.
mpz_class lagrange_at_zero(const std::vector<mpz_class>& xs, const std::vector<mpz_class>& ys,
                           const mpz_class& q) {
  mpz_class acc = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mpz_class num = 1;
    mpz_class den = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      num = num * (q - xs[j]) % q;
      den = den * ((xs[i] - xs[j]) % q + q) % q;
    }
    mpz_class den_inv;
    mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), q.get_mpz_t());
    acc = (acc + ys[i] * num % q * den_inv) % q;
  }
  return acc;
}

TEST(PasswordSpec, EncodingAndMatch) {
  const PasswordSpec spec{"ABC", 2, 1};
  EXPECT_EQ(encode_password(spec, "BC"), 5);
  EXPECT_EQ(decode_password(spec, mpz_class(5)), "BC");
  EXPECT_FALSE(decode_password(spec, mpz_class(9)));
  EXPECT_EQ(spec.password_space(), 9);
  for (unsigned long v = 0; v < 9; ++v) {
    EXPECT_EQ(encode_password(spec, *decode_password(spec, mpz_class(v))), v);
  }
  EXPECT_TRUE(match("abcd", "abxx", 2));
  EXPECT_FALSE(match("abcd", "axxx", 2));
  EXPECT_THROW(match("abc", "ab", 1), Error);
}

TEST(PasswordSpec, Validation) {
  EXPECT_THROW((PasswordSpec{"ab", 3, 0}.validate()), Error);
  EXPECT_THROW((PasswordSpec{"ab", 3, 4}.validate()), Error);
  EXPECT_THROW((PasswordSpec{"aa", 3, 2}.validate()), Error);
  EXPECT_THROW((PasswordSpec{"", 3, 2}.validate()), Error);
  EXPECT_NO_THROW(PasswordSpec{}.validate(named_params("toy").field()));
  // 95^8 does not fit below q = 1013.
  EXPECT_THROW(PasswordSpec{}.validate(named_params("toy2027").field()), Error);
  const PasswordSpec spec{"ab", 3, 2};
  EXPECT_THROW(spec.check_password("abc"), Error);
  EXPECT_THROW(spec.check_password("ab"), Error);
  EXPECT_NO_THROW(spec.check_password("abb"));
}

TEST(LocalRecovery, BlobReconstructsByIndependentInterpolation) {
  const Field f = named_params("toy").field();
  const PasswordSpec spec;
  DeterministicRng rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const std::string p = test::random_password(spec, rng);
    const LocalBlob blob = local_register(spec, f, p, rng);
    ASSERT_EQ(blob.offsets.size(), spec.n);
    std::vector<mpz_class> xs;
    std::vector<mpz_class> ys;
    for (std::size_t i = 0; i < spec.t; ++i) {
      xs.push_back(position_coordinate(f, blob.v, i + 1, p[i]).value);
      ys.push_back((blob.offsets[i].value + position_mask(f, blob.v, i + 1, p[i]).value) % f.q);
    }
    mpz_class packed = 0;
    for (char c : p) packed = packed * 95 + (c - 0x20);
    EXPECT_EQ(lagrange_at_zero(xs, ys, f.q), packed);
  }
}

TEST(LocalRecovery, ExhaustiveSmallAlphabet) {
  // Every guess over {a,b,c}^4 with t = 2: recovered iff >= 2 positions agree.
  const Field f = named_params("toy").field();
  const PasswordSpec spec{"abc", 4, 2};
  DeterministicRng rng(11);
  const std::string p = "acba";
  const LocalBlob blob = local_register(spec, f, p, rng);
  for (unsigned v = 0; v < 81; ++v) {
    const std::string guess = *decode_password(spec, mpz_class(v));
    const auto res = local_recover(blob, guess);
    if (test::agreements(p, guess) >= 2) {
      ASSERT_EQ(res.password, p) << guess;
    } else {
      ASSERT_FALSE(res.password) << guess;
    }
    EXPECT_LE(res.subsets_tried, 6u);
  }
}

TEST(LocalRecovery, CompletenessAndSoundnessSimulation) {
  const Field f = named_params("toy").field();
  const PasswordSpec spec;
  DeterministicRng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::string p = test::random_password(spec, rng);
    const LocalBlob blob = local_register(spec, f, p, rng);
    const auto exact = local_recover(blob, p);
    EXPECT_EQ(exact.password, p);
    EXPECT_EQ(exact.subsets_tried, 1u);
    EXPECT_EQ(local_recover(blob, test::with_changes(spec, p, spec.n - spec.t, rng)).password, p);
    EXPECT_FALSE(local_recover(blob, test::with_changes(spec, p, spec.n - spec.t + 1, rng)).password);
  }
}

TEST(LocalRecovery, GuessMustFitSpec) {
  const Field f = named_params("toy").field();
  const PasswordSpec spec{"abc", 4, 2};
  DeterministicRng rng(13);
  const LocalBlob blob = local_register(spec, f, "abca", rng);
  EXPECT_THROW(local_recover(blob, "abc"), Error);
  EXPECT_THROW(local_recover(blob, "abcz"), Error);
}

TEST(LocalRecovery, CollisionsResampleKey) {
  // q = 11 and 3 positions: many keys collide. A colliding key is refused
  // outright; local_register resamples until the coordinates are distinct.
  const Field f{11};
  const PasswordSpec spec{"ab", 3, 2};
  DeterministicRng rng(14);
  bool saw_collision = false;
  for (int i = 0; i < 200 && !saw_collision; ++i) {
    const MacKey k = MacKey::random(rng);
    std::set<mpz_class> xs;
    bool bad = false;
    for (std::size_t pos = 0; pos < 3; ++pos) {
      const Scalar x = position_coordinate(f, k, pos + 1, "aba"[pos]);
      bad = bad || x.value == 0 || !xs.insert(x.value).second;
    }
    if (!bad) continue;
    saw_collision = true;
    try {
      local_register_with_key(spec, f, "aba", k, rng);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::kCollisionExhausted);
    }
  }
  EXPECT_TRUE(saw_collision);
  for (int i = 0; i < 50; ++i) {
    const LocalBlob blob = local_register(spec, f, "aba", rng);
    EXPECT_EQ(local_recover(blob, "aba").password, "aba");
  }
}

TEST(AssumptionInstance, Structure) {
  const Field f = named_params("toy2027").field();
  DeterministicRng rng(15);
  const Scalar alpha{123};
  for (int trial = 0; trial < 50; ++trial) {
    const AssumptionInstance inst = sample_assumption_instance(5, 4, 3, alpha, f, rng);
    ASSERT_EQ(inst.subsets.size(), 5u);
    ASSERT_EQ(inst.polynomial.size(), 3u);  // degree t - 1
    std::vector<mpz_class> xs;
    std::vector<mpz_class> ys;
    for (std::size_t i = 0; i < 5; ++i) {
      ASSERT_EQ(inst.subsets[i].size(), 4u);
      const auto& pt = inst.subsets[i][inst.on_polynomial[i]];
      EXPECT_EQ(evaluate(f, inst.polynomial, pt.x), pt.y);
      if (xs.size() < 3) {
        xs.push_back(pt.x.value);
        ys.push_back(pt.y.value);
      }
    }
    EXPECT_EQ(lagrange_at_zero(xs, ys, f.q), alpha.value);
  }
}

}  // namespace
}  // namespace pwrec
