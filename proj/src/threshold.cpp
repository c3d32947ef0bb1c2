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
#include "pwrec/threshold.hpp"

#include <algorithm>

#include "pwrec/error.hpp"

namespace pwrec {
namespace {

void check_coordinates(std::span<const Scalar> xs) {
  for (const auto& x : xs) {
    if (x.value == 0) {
      throw Error(Errc::kDuplicateCoordinate, "share coordinate 0 exposes the secret");
    }
  }
  if (has_duplicates(xs)) {
    throw Error(Errc::kDuplicateCoordinate, "share coordinates are not distinct");
  }
}

std::vector<Scalar> coordinates(std::span<const PartialDecryption> points) {
  std::vector<Scalar> xs;
  xs.reserve(points.size());
  for (const auto& p : points) xs.push_back(p.x);
  return xs;
}

}  // namespace

ThresholdKey keygen_threshold(const GroupParams& params, std::size_t t,
                              std::span<const Scalar> xs, Rng& rng) {
  if (t < 1 || t > xs.size()) {
    throw Error(Errc::kInvalidArgument, "threshold must satisfy 1 <= t <= n");
  }
  check_coordinates(xs);
  const Field f = params.field();
  Polynomial dealer = random_polynomial(f, random_scalar(f, rng), t - 1, rng);
  return keygen_threshold(params, dealer, xs);
}

ThresholdKey keygen_threshold(const GroupParams& params,
                              const Polynomial& dealer,
                              std::span<const Scalar> xs) {
  if (dealer.empty() || dealer.size() > xs.size()) {
    throw Error(Errc::kInvalidArgument, "threshold must satisfy 1 <= t <= n");
  }
  check_coordinates(xs);
  const Field f = params.field();
  ThresholdKey key;
  key.keypair = keypair_from_secret(params, dealer[0]);
  key.shares.params = params;
  key.shares.pk_h = key.keypair.pk.h;
  key.shares.t = dealer.size();
  key.shares.n = xs.size();
  for (const auto& x : xs) key.shares.shares.push_back({x, evaluate(f, dealer, x)});
  return key;
}

PartialDecryption share_decrypt(const GroupParams& params,
                                const SharePoint& share, const Ciphertext& c) {
  return {share.x, pow(params, c.a, share.alpha)};
}

GroupElement interpolate_exponent(const GroupParams& params,
                                  std::span<const PartialDecryption> points,
                                  const Scalar& x0) {
  if (points.empty()) throw Error(Errc::kInvalidArgument, "no points to interpolate");
  const Field f = params.field();
  const std::vector<Scalar> xs = coordinates(points);
  GroupElement acc = identity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    acc = mul(params, acc, pow(params, points[i].d, lagrange_coeff(f, xs, x0, i)));
  }
  return acc;
}

CombineResult combine(const PublicKey& pk, const Ciphertext& c,
                      std::span<const PartialDecryption> candidates,
                      std::size_t t, const PlaintextPredicate& accept) {
  CombineResult result;
  if (t == 0 || t > candidates.size()) return result;
  const GroupParams& gp = pk.params;
  std::vector<PartialDecryption> subset(t);
  std::vector<Scalar> xs(t);
  result.subsets_tried = for_each_subset(
      candidates.size(), t, [&](std::span<const std::size_t> idx) {
        for (std::size_t j = 0; j < t; ++j) {
          subset[j] = candidates[idx[j]];
          xs[j] = subset[j].x;
        }
        if (has_duplicates(xs)) return false;
        const GroupElement shared = interpolate_exponent(gp, subset, Scalar{0});
        GroupElement m = div(gp, c.b, shared);
        if (!accept(m)) return false;
        result.plaintext = std::move(m);
        return true;
      });
  return result;
}

EquivocationOracle::EquivocationOracle(const GroupParams& params, std::size_t t,
                                       std::size_t n, Rng& rng,
                                       OracleFault fault)
    : fault_(fault) {
  if (t < 1 || t > n) throw Error(Errc::kInvalidArgument, "need 1 <= t <= n");
  const Field f = params.field();
  if (mpz_class(static_cast<unsigned long>(n)) >= f.q) {
    throw Error(Errc::kInvalidArgument, "field too small for n coordinates");
  }
  std::vector<Scalar> xs;
  while (xs.size() < n) {
    Scalar x = random_nonzero_scalar(f, rng);
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
  }
  key_ = keygen_threshold(params, t, xs, rng);
}

OracleOutput EquivocationOracle::partials_from(const Ciphertext& c,
                                               const std::vector<bool>& genuine,
                                               Rng& rng) const {
  const GroupParams& gp = key_.keypair.pk.params;
  OracleOutput out{c, {}};
  out.partials.reserve(n());
  for (std::size_t i = 0; i < n(); ++i) {
    const SharePoint& share = key_.shares.shares[i];
    if (genuine[i]) {
      out.partials.push_back(share_decrypt(gp, share, c));
    } else {
      SharePoint fake{share.x, random_scalar(gp.field(), rng)};
      out.partials.push_back(share_decrypt(gp, fake, c));
    }
  }
  return out;
}

OracleOutput EquivocationOracle::S(const GroupElement& m, Rng& rng) const {
  const Ciphertext c = encrypt(pk(), m, rng);
  return partials_from(c, std::vector<bool>(n(), true), rng);
}

OracleOutput EquivocationOracle::I(const GroupElement& m,
                                   std::span<const std::size_t> indices,
                                   Rng& rng) const {
  if (indices.size() + 1 != t()) {
    throw Error(Errc::kInvalidArgument, "I expects exactly t-1 indices");
  }
  std::vector<bool> genuine(n(), false);
  for (std::size_t i : indices) {
    if (i >= n() || genuine[i]) {
      throw Error(Errc::kInvalidArgument, "I indices must be distinct and in range");
    }
    genuine[i] = true;
  }
  const Ciphertext c = encrypt(pk(), m, rng);
  return partials_from(c, genuine, rng);
}

OracleOutput EquivocationOracle::F(const GroupElement& m, Rng& rng) const {
  const Ciphertext c = encrypt(pk(), m, rng);
  const bool leak = fault_ == OracleFault::kFReusesGenuineShares;
  return partials_from(c, std::vector<bool>(n(), leak), rng);
}

}  // namespace pwrec
