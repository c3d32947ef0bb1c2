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
#ifndef PWREC_THRESHOLD_HPP_
#define PWREC_THRESHOLD_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pwrec/elgamal.hpp"
#include "pwrec/polynomial.hpp"

namespace pwrec {

// One share alpha_i = f(x_i) of the secret key at a public coordinate x_i.
struct SharePoint {
  Scalar x;
  Scalar alpha;

  friend bool operator==(const SharePoint&, const SharePoint&) = default;
};

struct ShareSet {
  GroupParams params;
  GroupElement pk_h;
  std::size_t t = 0;
  std::size_t n = 0;
  std::vector<SharePoint> shares;
};

// a^{alpha_i} for ciphertext component a, tagged with the share coordinate.
struct PartialDecryption {
  Scalar x;
  GroupElement d;

  friend bool operator==(const PartialDecryption&, const PartialDecryption&) = default;
};

struct ThresholdKey {
  KeyPair keypair;
  ShareSet shares;
};

/**
 * Deals a (t, n) sharing of a fresh ElGamal secret at the caller's public
 * coordinates. The coordinates must be pairwise distinct and nonzero, since
 * the secret itself sits at x = 0.
 */
ThresholdKey keygen_threshold(const GroupParams& params, std::size_t t,
                              std::span<const Scalar> xs, Rng& rng);
// Same, with an explicit dealer polynomial (coefficient 0 is the secret).
ThresholdKey keygen_threshold(const GroupParams& params,
                              const Polynomial& dealer,
                              std::span<const Scalar> xs);

// Proof-free share decryption: d = c.a^{alpha_i}.
PartialDecryption share_decrypt(const GroupParams& params,
                                const SharePoint& share, const Ciphertext& c);

// prod d_i^{lambda_{x0,i}}: interpolation in the exponent.
GroupElement interpolate_exponent(const GroupParams& params,
                                  std::span<const PartialDecryption> points,
                                  const Scalar& x0);

using PlaintextPredicate = std::function<bool(const GroupElement&)>;

struct CombineResult {
  std::optional<GroupElement> plaintext;
  std::uint64_t subsets_tried = 0;
};

/**
 * Tries every t-subset of the candidates, in lexicographic index order, and
 * returns the first decryption the predicate accepts. Subsets containing a
 * repeated coordinate are counted but skipped.
 */
CombineResult combine(const PublicKey& pk, const Ciphertext& c,
                      std::span<const PartialDecryption> candidates,
                      std::size_t t, const PlaintextPredicate& accept);

// Planted faults used to check that the statistical games have power.
enum class OracleFault {
  kNone,
  kFReusesGenuineShares,
};

struct OracleOutput {
  Ciphertext c;
  std::vector<PartialDecryption> partials;
};

/**
 * The S, I and F procedures of the equivocation games, bound to one dealt
 * key. Immutable after construction; the randomness each call needs is
 * passed in.
 */
class EquivocationOracle {
 public:
  EquivocationOracle(const GroupParams& params, std::size_t t, std::size_t n,
                     Rng& rng, OracleFault fault = OracleFault::kNone);

  const PublicKey& pk() const { return key_.keypair.pk; }
  const ShareSet& share_set() const { return key_.shares; }
  std::size_t t() const { return key_.shares.t; }
  std::size_t n() const { return key_.shares.n; }

  // Genuine decryption shares for every index.
  OracleOutput S(const GroupElement& m, Rng& rng) const;
  // Genuine shares at exactly t-1 distinct indices (0-based), random ones
  // elsewhere. Throws Errc::kInvalidArgument on a malformed index set.
  OracleOutput I(const GroupElement& m, std::span<const std::size_t> indices,
                 Rng& rng) const;
  // Random shares everywhere.
  OracleOutput F(const GroupElement& m, Rng& rng) const;

 private:
  OracleOutput partials_from(const Ciphertext& c,
                             const std::vector<bool>& genuine, Rng& rng) const;

  ThresholdKey key_;
  OracleFault fault_;
};

}  // namespace pwrec

#endif  // PWREC_THRESHOLD_HPP_
