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
#ifndef PWREC_SUBSTRING_HPP_
#define PWREC_SUBSTRING_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "pwrec/local_recovery.hpp"
#include "pwrec/protocols.hpp"

namespace pwrec {

// --- Paillier, generator fixed to N + 1 -----------------------------------

struct PaillierPublicKey {
  mpz_class n;
  mpz_class n_squared;

  friend bool operator==(const PaillierPublicKey&, const PaillierPublicKey&) = default;
};

struct PaillierKeys {
  PaillierPublicKey pk;
  mpz_class lambda;
  mpz_class mu;
};

PaillierPublicKey paillier_public_key(const mpz_class& n);
// bits is the size of N; the two primes have bits/2 bits each.
PaillierKeys paillier_keygen(unsigned bits, Rng& rng);
// Throws Errc::kInvalidArgument unless gcd(N, (p-1)(q-1)) = 1.
PaillierKeys paillier_keys_from_primes(const mpz_class& p, const mpz_class& q);

// Plaintexts must lie in [0, N); Errc::kInvalidArgument otherwise.
mpz_class paillier_encrypt(const PaillierPublicKey& pk, const mpz_class& m, Rng& rng);
mpz_class paillier_encrypt(const PaillierPublicKey& pk, const mpz_class& m,
                           const mpz_class& r);
mpz_class paillier_decrypt(const PaillierKeys& keys, const mpz_class& c);
// E(a) +_h E(b) = E(a + b mod N)
mpz_class paillier_add(const PaillierPublicKey& pk, const mpz_class& c1,
                       const mpz_class& c2);
// E(a) *_h k = E(a k mod N)
mpz_class paillier_scale(const PaillierPublicKey& pk, const mpz_class& c,
                         const mpz_class& k);

// --- keystream cipher with a verifier tag ----------------------------------

inline constexpr std::size_t kVerifierBytes = 16;

// Blob layout before integer conversion: 0x01 || (plaintext || tag) XOR ks,
// tag = HMAC(key, "vfy" || plaintext)[0..16).
mpz_class sym_encrypt(const mpz_class& key, std::string_view plaintext);
// nullopt when the blob is not a valid encryption under key.
std::optional<std::string> sym_decrypt(const mpz_class& key, const mpz_class& blob);

// --- substring-knowledge recovery -------------------------------------------

inline constexpr unsigned kMinPaillierBits = 1024;
inline constexpr unsigned kDefaultPaillierBits = 2048;

struct SubstringRecord {
  std::string login;
  GroupParams params;
  ChalRespAuth auth;
  std::vector<mpz_class> tags;   // h_i(p_i .. p_{i+t-1})
  std::vector<mpz_class> blobs;  // E_{H_i(window)}(p)
  PasswordSpec spec;
  std::uint64_t attempts = 0;

  friend bool operator==(const SubstringRecord&, const SubstringRecord&) = default;
};

struct SubstringRequest {
  PaillierPublicKey pk;
  std::vector<mpz_class> ciphertexts;  // E(h_i(guess window i))
};

std::size_t window_count(const PasswordSpec& spec);
// 0-based window index i covers characters i .. i+t-1.
mpz_class window_tag(const PasswordSpec& spec, std::string_view password,
                     std::size_t i);
mpz_class window_key(const PasswordSpec& spec, std::string_view password,
                     std::size_t i);

SubstringRecord spr_register(const PasswordSpec& spec, const GroupParams& params,
                             std::string_view login, std::string_view password);

struct SubstringSession {
  PaillierKeys keys;
  SubstringRequest request;
};

SubstringSession spr_client_request(const PasswordSpec& spec, std::string_view guess,
                                    Rng& rng, unsigned modulus_bits = kDefaultPaillierBits);
// Uses caller-provided keys instead of generating a fresh pair.
SubstringSession spr_client_request(const PasswordSpec& spec, std::string_view guess,
                                    PaillierKeys keys, Rng& rng);

// E((h'_i - h_i) r_i + blob_i) for every window, r_i uniform in [1, N-1].
std::vector<mpz_class> spr_server_respond(const SubstringRecord& record,
                                          const SubstringRequest& request, Rng& rng,
                                          unsigned min_modulus_bits = kMinPaillierBits);

std::optional<std::string> spr_client_finish(const PasswordSpec& spec,
                                             const PaillierKeys& keys,
                                             const std::vector<mpz_class>& responses,
                                             std::string_view guess);

}  // namespace pwrec

#endif  // PWREC_SUBSTRING_HPP_
