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
#ifndef PWREC_GROUP_HPP_
#define PWREC_GROUP_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "pwrec/bytes.hpp"
#include "pwrec/rng.hpp"

namespace pwrec {

// Prime field Z_q. Shares, exponents, MAC outputs and packed passwords all
// live here.
struct Field {
  mpz_class q;

  friend bool operator==(const Field& a, const Field& b) { return a.q == b.q; }
};

// Element of Z_q, always reduced.
struct Scalar {
  mpz_class value;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.value == b.value;
  }
};

// Quadratic residue modulo p, i.e. a member of the order-q subgroup.
struct GroupElement {
  mpz_class value;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.value == b.value;
  }
};

/**
 * Subgroup of quadratic residues modulo a safe prime p = 2q + 1, generated
 * by g. All protocols run over one of these.
 */
struct GroupParams {
  mpz_class p;
  mpz_class q;
  mpz_class g;

  Field field() const { return Field{q}; }

  friend bool operator==(const GroupParams& a, const GroupParams& b) {
    return a.p == b.p && a.q == b.q && a.g == b.g;
  }
};

// Secret key for the keyed hash families. 128 bits unless stated otherwise.
class MacKey {
 public:
  static constexpr std::size_t kDefaultBytes = 16;

  MacKey() = default;
  explicit MacKey(Bytes key, std::size_t expected_bytes = kDefaultBytes);

  static MacKey random(Rng& rng, std::size_t bytes = kDefaultBytes);

  std::span<const std::uint8_t> bytes() const { return key_; }
  std::size_t size() const { return key_.size(); }

  friend bool operator==(const MacKey& a, const MacKey& b) {
    return a.key_ == b.key_;
  }

 private:
  Bytes key_;
};

// Safe-prime generation. bits is the bit length of p; anything below 16 is
// rejected.
GroupParams generate_params(unsigned bits, Rng& rng);

// Throws Errc::kInvalidArgument unless p, q are (probable) primes with
// p = 2q + 1 and g is a non-identity element of the order-q subgroup.
void validate_params(const GroupParams& params);

// Named parameter sets shipped with the library.
//   "toy23"   p = 23, q = 11, g = 2     (exhaustive oracle tests)
//   "toy2027" p = 2027, q = 1013, g = 4 (small-field games)
//   "toy64"   largest 64-bit safe prime (equivocation games)
//   "toy"     fixed 512-bit safe prime  (fast service mode)
//   "real"    2048-bit MODP prime of RFC 3526, g = 4
GroupParams named_params(std::string_view name);
// Name of a shipped parameter set equal to params, or empty.
std::string params_name(const GroupParams& params);

// --- Z_q ---------------------------------------------------------------

Scalar make_scalar(const Field& f, const mpz_class& v);
Scalar random_scalar(const Field& f, Rng& rng);
Scalar random_nonzero_scalar(const Field& f, Rng& rng);
Scalar add(const Field& f, const Scalar& a, const Scalar& b);
Scalar sub(const Field& f, const Scalar& a, const Scalar& b);
Scalar mul(const Field& f, const Scalar& a, const Scalar& b);
Scalar neg(const Field& f, const Scalar& a);
// Throws Errc::kDegenerateInput for zero.
Scalar inv(const Field& f, const Scalar& a);

// --- subgroup of Z_p^* -------------------------------------------------

bool is_element(const GroupParams& params, const mpz_class& v);
// Throws Errc::kMalformed if v is outside the subgroup.
GroupElement make_element(const GroupParams& params, const mpz_class& v);
GroupElement identity();
GroupElement generator(const GroupParams& params);
GroupElement mul(const GroupParams& params, const GroupElement& a,
                 const GroupElement& b);
GroupElement inv(const GroupParams& params, const GroupElement& a);
GroupElement div(const GroupParams& params, const GroupElement& a,
                 const GroupElement& b);
GroupElement pow(const GroupParams& params, const GroupElement& base,
                 const Scalar& e);
GroupElement pow_g(const GroupParams& params, const Scalar& e);
GroupElement random_element(const GroupParams& params, Rng& rng);

// Number of modular exponentiations performed by pow/pow_g on the calling
// thread since it started. Used for the server work accounting.
std::uint64_t exponentiation_count();

class ExponentiationMeter {
 public:
  ExponentiationMeter() : start_(exponentiation_count()) {}
  std::uint64_t elapsed() const { return exponentiation_count() - start_; }

 private:
  std::uint64_t start_;
};

// --- message embedding ---------------------------------------------------

// m -> m+1 if that is a quadratic residue, else p - (m+1). Injective on
// [0, q-1].
GroupElement encode_message(const GroupParams& params, const Scalar& m);
GroupElement encode_message(const GroupParams& params, const mpz_class& m);
// Inverse of encode_message. Throws Errc::kMalformed outside the subgroup.
Scalar decode_message(const GroupParams& params, const GroupElement& e);

// --- keyed hashing ---------------------------------------------------------

// Uniform integer in [0, modulus) derived from SHA-256 in counter mode over
// (key, tag, data), with rejection sampling so there is no modulo bias.
mpz_class mac_to_range(std::span<const std::uint8_t> key,
                       std::string_view tag,
                       std::span<const std::uint8_t> data,
                       const mpz_class& modulus);

Scalar mac_to_scalar(const Field& f, const MacKey& key, std::string_view tag,
                     std::span<const std::uint8_t> data);
Scalar mac_to_scalar(const Field& f, const MacKey& key, std::string_view tag,
                     std::string_view data);

// Deterministic map into the subgroup under a fixed public key; nobody knows
// the discrete log of the output.
GroupElement hash_to_group(const GroupParams& params,
                           std::span<const std::uint8_t> data);
GroupElement hash_to_group(const GroupParams& params, std::string_view data);

}  // namespace pwrec

#endif  // PWREC_GROUP_HPP_
