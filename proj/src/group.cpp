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
#include "pwrec/group.hpp"

#include "pwrec/error.hpp"

namespace pwrec {
namespace {

constexpr int kPrimalityReps = 40;  // error <= 4^-40 = 2^-80

thread_local std::uint64_t t_exponentiations = 0;

// 512-bit safe prime generated once for the fast service mode.
constexpr const char* kToy512P =
    "9dd0284586cbbf171ca54a0a2c6aedba9c98bbe1568ccb9db88f12f4b7fdc492"
    "b9a5940a131c7116915f308bac00d0c6c5dc069ff5fc3b98444da9c5312124ab";

// RFC 3526, 2048-bit MODP group (group id 14).
constexpr const char* kModp2048P =
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD129024E088A67CC74"
    "020BBEA63B139B22514A08798E3404DDEF9519B3CD3A431B302B0A6DF25F1437"
    "4FE1356D6D51C245E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3DC2007CB8A163BF05"
    "98DA48361C55D39A69163FA8FD24CF5F83655D23DCA3AD961C62F356208552BB"
    "9ED529077096966D670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B"
    "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9DE2BCBF695581718"
    "3995497CEA956AE515D2261898FA051015728E5A8AACAA68FFFFFFFFFFFFFFFF";

constexpr const char* kHashToGroupKey = "pwrec/hash-to-group/v1";

GroupParams from_safe_prime(const mpz_class& p, unsigned long g) {
  GroupParams params{p, (p - 1) / 2, g};
  return params;
}

bool is_prime(const mpz_class& v) {
  return mpz_probab_prime_p(v.get_mpz_t(), kPrimalityReps) > 0;
}

mpz_class mod(const mpz_class& v, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

MacKey::MacKey(Bytes key, std::size_t expected_bytes) : key_(std::move(key)) {
  if (key_.size() != expected_bytes) {
    throw Error(Errc::kInvalidArgument, "mac key has wrong length");
  }
}

MacKey MacKey::random(Rng& rng, std::size_t bytes) {
  Bytes key(bytes);
  rng.fill(key);
  return MacKey(std::move(key), bytes);
}

GroupParams generate_params(unsigned bits, Rng& rng) {
  if (bits < 16) throw Error(Errc::kInvalidArgument, "group size below 16 bits");
  const unsigned qbits = bits - 1;
  for (;;) {
    mpz_class q = rng.below(mpz_class(1) << qbits);
    mpz_setbit(q.get_mpz_t(), qbits - 1);
    mpz_setbit(q.get_mpz_t(), 0);
    if (!is_prime(q)) continue;
    mpz_class p = 2 * q + 1;
    if (!is_prime(p)) continue;
    GroupParams params{p, q, 1};
    while (params.g == 1) {
      mpz_class s = rng.below(p - 2) + 2;  // s in [2, p-1]
      params.g = mod(s * s, p);
    }
    return params;
  }
}

void validate_params(const GroupParams& params) {
  if (params.p <= 3 || params.p != 2 * params.q + 1) {
    throw Error(Errc::kInvalidArgument, "p is not of the form 2q + 1");
  }
  if (!is_prime(params.q) || !is_prime(params.p)) {
    throw Error(Errc::kInvalidArgument, "p or q is not prime");
  }
  if (params.g <= 1 || params.g >= params.p) {
    throw Error(Errc::kInvalidArgument, "generator out of range");
  }
  mpz_class r;
  mpz_powm(r.get_mpz_t(), params.g.get_mpz_t(), params.q.get_mpz_t(),
           params.p.get_mpz_t());
  if (r != 1) throw Error(Errc::kInvalidArgument, "generator not in subgroup");
}

GroupParams named_params(std::string_view name) {
  if (name == "toy23") return GroupParams{23, 11, 2};
  if (name == "toy2027") return GroupParams{2027, 1013, 4};
  if (name == "toy64") return from_safe_prime(mpz_class("ffffffffffffded7", 16), 4);
  if (name == "toy") return from_safe_prime(mpz_class(kToy512P, 16), 4);
  if (name == "real") return from_safe_prime(mpz_class(kModp2048P, 16), 4);
  throw Error(Errc::kInvalidArgument, "unknown parameter set: " + std::string(name));
}

std::string params_name(const GroupParams& params) {
  for (const char* name : {"toy23", "toy2027", "toy64", "toy", "real"}) {
    if (named_params(name) == params) return name;
  }
  return {};
}

Scalar make_scalar(const Field& f, const mpz_class& v) { return {mod(v, f.q)}; }

Scalar random_scalar(const Field& f, Rng& rng) { return {rng.below(f.q)}; }

Scalar random_nonzero_scalar(const Field& f, Rng& rng) {
  return {rng.below(f.q - 1) + 1};
}

Scalar add(const Field& f, const Scalar& a, const Scalar& b) {
  return make_scalar(f, a.value + b.value);
}

Scalar sub(const Field& f, const Scalar& a, const Scalar& b) {
  return make_scalar(f, a.value - b.value);
}

Scalar mul(const Field& f, const Scalar& a, const Scalar& b) {
  return make_scalar(f, a.value * b.value);
}

Scalar neg(const Field& f, const Scalar& a) { return make_scalar(f, -a.value); }

Scalar inv(const Field& f, const Scalar& a) {
  mpz_class r;
  if (mod(a.value, f.q) == 0 ||
      mpz_invert(r.get_mpz_t(), a.value.get_mpz_t(), f.q.get_mpz_t()) == 0) {
    throw Error(Errc::kDegenerateInput, "inverse of zero scalar");
  }
  return {r};
}

bool is_element(const GroupParams& params, const mpz_class& v) {
  if (v <= 0 || v >= params.p) return false;
  // Euler's criterion, evaluated through the Legendre symbol.
  return mpz_legendre(v.get_mpz_t(), params.p.get_mpz_t()) == 1;
}

GroupElement make_element(const GroupParams& params, const mpz_class& v) {
  if (!is_element(params, v)) {
    throw Error(Errc::kMalformed, "value is not in the prime-order subgroup");
  }
  return {v};
}

GroupElement identity() { return {1}; }

GroupElement generator(const GroupParams& params) { return {params.g}; }

GroupElement mul(const GroupParams& params, const GroupElement& a,
                 const GroupElement& b) {
  return {mod(a.value * b.value, params.p)};
}

GroupElement inv(const GroupParams& params, const GroupElement& a) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.value.get_mpz_t(), params.p.get_mpz_t()) == 0) {
    throw Error(Errc::kDegenerateInput, "element not invertible");
  }
  return {r};
}

GroupElement div(const GroupParams& params, const GroupElement& a,
                 const GroupElement& b) {
  return mul(params, a, inv(params, b));
}

GroupElement pow(const GroupParams& params, const GroupElement& base,
                 const Scalar& e) {
  ++t_exponentiations;
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.value.get_mpz_t(), e.value.get_mpz_t(),
           params.p.get_mpz_t());
  return {r};
}

GroupElement pow_g(const GroupParams& params, const Scalar& e) {
  return pow(params, generator(params), e);
}

GroupElement random_element(const GroupParams& params, Rng& rng) {
  return pow_g(params, random_scalar(params.field(), rng));
}

std::uint64_t exponentiation_count() { return t_exponentiations; }

GroupElement encode_message(const GroupParams& params, const mpz_class& m) {
  if (m < 0 || m >= params.q) {
    throw Error(Errc::kInvalidArgument, "message outside [0, q-1]");
  }
  mpz_class x = m + 1;
  if (is_element(params, x)) return {x};
  return {params.p - x};
}

GroupElement encode_message(const GroupParams& params, const Scalar& m) {
  return encode_message(params, m.value);
}

Scalar decode_message(const GroupParams& params, const GroupElement& e) {
  if (!is_element(params, e.value)) {
    throw Error(Errc::kMalformed, "value is not in the prime-order subgroup");
  }
  if (e.value <= params.q) return {e.value - 1};
  return {params.p - e.value - 1};
}

mpz_class mac_to_range(std::span<const std::uint8_t> key, std::string_view tag,
                       std::span<const std::uint8_t> data,
                       const mpz_class& modulus) {
  if (modulus <= 0) throw Error(Errc::kInvalidArgument, "empty hash range");
  // Draw 64 bits beyond the modulus so rejections are rare.
  const std::size_t len = byte_length(modulus) + 8;
  const mpz_class span_size = mpz_class(1) << (8 * len);
  const mpz_class limit = (span_size / modulus) * modulus;

  Bytes prefix;
  append_field(prefix, key);
  append_field(prefix, to_bytes(tag));
  append_field(prefix, data);

  std::uint32_t counter = 0;
  Bytes stream;
  for (;;) {
    while (stream.size() < len) {
      Bytes block;
      append_u32(block, counter++);
      block.insert(block.end(), prefix.begin(), prefix.end());
      Digest d = sha256(block);
      stream.insert(stream.end(), d.begin(), d.end());
    }
    mpz_class x = mpz_from_bytes(std::span(stream).first(len));
    if (x < limit) return mod(x, modulus);
    stream.erase(stream.begin(), stream.begin() + static_cast<long>(len));
  }
}

Scalar mac_to_scalar(const Field& f, const MacKey& key, std::string_view tag,
                     std::span<const std::uint8_t> data) {
  return {mac_to_range(key.bytes(), tag, data, f.q)};
}

Scalar mac_to_scalar(const Field& f, const MacKey& key, std::string_view tag,
                     std::string_view data) {
  const Bytes b = to_bytes(data);
  return mac_to_scalar(f, key, tag, b);
}

GroupElement hash_to_group(const GroupParams& params,
                           std::span<const std::uint8_t> data) {
  const Bytes key = to_bytes(kHashToGroupKey);
  return encode_message(params, mac_to_range(key, "h2g", data, params.q));
}

GroupElement hash_to_group(const GroupParams& params, std::string_view data) {
  const Bytes b = to_bytes(data);
  return hash_to_group(params, b);
}

}  // namespace pwrec
