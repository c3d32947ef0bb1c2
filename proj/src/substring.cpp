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
#include "pwrec/substring.hpp"

#include "pwrec/error.hpp"

namespace pwrec {
namespace {

constexpr std::uint8_t kBlobHeader = 0x01;

mpz_class mod(const mpz_class& v, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class powm(const mpz_class& b, const mpz_class& e, const mpz_class& m) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class random_prime(unsigned bits, Rng& rng) {
  for (;;) {
    mpz_class v = rng.below(mpz_class(1) << bits);
    mpz_setbit(v.get_mpz_t(), bits - 1);
    mpz_setbit(v.get_mpz_t(), bits - 2);  // keeps N at full length
    mpz_setbit(v.get_mpz_t(), 0);
    if (mpz_probab_prime_p(v.get_mpz_t(), 40) > 0) return v;
  }
}

// L(u) = (u - 1) / N
mpz_class paillier_l(const mpz_class& u, const mpz_class& n) { return (u - 1) / n; }

Bytes keystream(const mpz_class& key, std::size_t len) {
  Bytes prefix = to_bytes("sym-ks");
  append_field(prefix, mpz_to_bytes(key));
  Bytes out;
  for (std::uint32_t ctr = 0; out.size() < len; ++ctr) {
    Bytes block = prefix;
    append_u32(block, ctr);
    const Digest d = sha256(block);
    out.insert(out.end(), d.begin(), d.end());
  }
  out.resize(len);
  return out;
}

Bytes verifier(const mpz_class& key, std::string_view plaintext) {
  Bytes msg = to_bytes("vfy");
  msg.insert(msg.end(), plaintext.begin(), plaintext.end());
  const Digest d = hmac_sha256(mpz_to_bytes(key), msg);
  return Bytes(d.begin(), d.begin() + kVerifierBytes);
}

const mpz_class& hash_range() {
  static const mpz_class range = mpz_class(1) << 256;
  return range;
}

std::string_view window_of(const PasswordSpec& spec, std::string_view password,
                           std::size_t i) {
  if (i >= window_count(spec)) throw Error(Errc::kInvalidArgument, "window out of range");
  return password.substr(i, spec.t);
}

}  // namespace

PaillierPublicKey paillier_public_key(const mpz_class& n) {
  if (n <= 1) throw Error(Errc::kInvalidArgument, "paillier modulus too small");
  return PaillierPublicKey{n, n * n};
}

PaillierKeys paillier_keygen(unsigned bits, Rng& rng) {
  if (bits < 16 || bits % 2 != 0) {
    throw Error(Errc::kInvalidArgument, "paillier modulus size must be even and >= 16");
  }
  for (;;) {
    const mpz_class p = random_prime(bits / 2, rng);
    const mpz_class q = random_prime(bits / 2, rng);
    if (p == q) continue;
    try {
      return paillier_keys_from_primes(p, q);
    } catch (const Error&) {
      continue;
    }
  }
}

PaillierKeys paillier_keys_from_primes(const mpz_class& p, const mpz_class& q) {
  const mpz_class n = p * q;
  const mpz_class phi = (p - 1) * (q - 1);
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), phi.get_mpz_t());
  if (p == q || g != 1) {
    throw Error(Errc::kInvalidArgument, "gcd(N, (p-1)(q-1)) must be 1");
  }
  PaillierKeys keys;
  keys.pk = paillier_public_key(n);
  mpz_lcm(keys.lambda.get_mpz_t(), mpz_class(p - 1).get_mpz_t(),
          mpz_class(q - 1).get_mpz_t());
  // With generator N + 1, L(g^lambda mod N^2) = lambda mod N.
  const mpz_class l = paillier_l(powm(n + 1, keys.lambda, keys.pk.n_squared), n);
  if (mpz_invert(keys.mu.get_mpz_t(), l.get_mpz_t(), n.get_mpz_t()) == 0) {
    throw Error(Errc::kInvalidArgument, "degenerate paillier key");
  }
  return keys;
}

mpz_class paillier_encrypt(const PaillierPublicKey& pk, const mpz_class& m, Rng& rng) {
  for (;;) {
    mpz_class r = rng.below(pk.n - 1) + 1;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), pk.n.get_mpz_t());
    if (g == 1) return paillier_encrypt(pk, m, r);
  }
}

mpz_class paillier_encrypt(const PaillierPublicKey& pk, const mpz_class& m,
                           const mpz_class& r) {
  if (m < 0 || m >= pk.n) throw Error(Errc::kInvalidArgument, "plaintext out of range");
  // (1 + N)^m = 1 + mN mod N^2
  const mpz_class gm = mod(1 + m * pk.n, pk.n_squared);
  return mod(gm * powm(r, pk.n, pk.n_squared), pk.n_squared);
}

mpz_class paillier_decrypt(const PaillierKeys& keys, const mpz_class& c) {
  const PaillierPublicKey& pk = keys.pk;
  if (c <= 0 || c >= pk.n_squared) {
    throw Error(Errc::kInvalidArgument, "ciphertext out of range");
  }
  return mod(paillier_l(powm(c, keys.lambda, pk.n_squared), pk.n) * keys.mu, pk.n);
}

mpz_class paillier_add(const PaillierPublicKey& pk, const mpz_class& c1,
                       const mpz_class& c2) {
  return mod(c1 * c2, pk.n_squared);
}

mpz_class paillier_scale(const PaillierPublicKey& pk, const mpz_class& c,
                         const mpz_class& k) {
  return powm(c, mod(k, pk.n), pk.n_squared);
}

mpz_class sym_encrypt(const mpz_class& key, std::string_view plaintext) {
  Bytes body(plaintext.begin(), plaintext.end());
  const Bytes tag = verifier(key, plaintext);
  body.insert(body.end(), tag.begin(), tag.end());
  const Bytes ks = keystream(key, body.size());
  Bytes blob{kBlobHeader};
  for (std::size_t i = 0; i < body.size(); ++i) blob.push_back(body[i] ^ ks[i]);
  return mpz_from_bytes(blob);
}

std::optional<std::string> sym_decrypt(const mpz_class& key, const mpz_class& blob) {
  if (blob <= 0) return std::nullopt;
  const Bytes bytes = mpz_to_bytes(blob);
  if (bytes.size() < 1 + kVerifierBytes || bytes[0] != kBlobHeader) return std::nullopt;
  const std::size_t len = bytes.size() - 1;
  const Bytes ks = keystream(key, len);
  Bytes body(len);
  for (std::size_t i = 0; i < len; ++i) body[i] = bytes[i + 1] ^ ks[i];
  std::string plaintext(body.begin(), body.end() - kVerifierBytes);
  const Bytes tag = verifier(key, plaintext);
  if (!constant_time_equal(tag, std::span(body).last(kVerifierBytes))) {
    return std::nullopt;
  }
  return plaintext;
}

std::size_t window_count(const PasswordSpec& spec) {
  return spec.n >= spec.t ? spec.n - spec.t + 1 : 0;
}

mpz_class window_tag(const PasswordSpec& spec, std::string_view password,
                     std::size_t i) {
  return mac_to_range({}, "sub-h" + std::to_string(i + 1),
                      to_bytes(window_of(spec, password, i)), hash_range());
}

mpz_class window_key(const PasswordSpec& spec, std::string_view password,
                     std::size_t i) {
  return mac_to_range({}, "sub-H" + std::to_string(i + 1),
                      to_bytes(window_of(spec, password, i)), hash_range());
}

SubstringRecord spr_register(const PasswordSpec& spec, const GroupParams& params,
                             std::string_view login, std::string_view password) {
  spec.validate();
  spec.check_password(password);
  SubstringRecord record;
  record.login = std::string(login);
  record.params = params;
  record.auth = cr_register(params, password);
  record.spec = spec;
  const mpz_class blob_limit = mpz_class(1) << (kMinPaillierBits - 1);
  for (std::size_t i = 0; i < window_count(spec); ++i) {
    record.tags.push_back(window_tag(spec, password, i));
    record.blobs.push_back(sym_encrypt(window_key(spec, password, i), password));
    if (record.blobs.back() >= blob_limit) {
      throw Error(Errc::kInvalidArgument, "password too long for the paillier modulus");
    }
  }
  return record;
}

SubstringSession spr_client_request(const PasswordSpec& spec, std::string_view guess,
                                    Rng& rng, unsigned modulus_bits) {
  return spr_client_request(spec, guess, paillier_keygen(modulus_bits, rng), rng);
}

SubstringSession spr_client_request(const PasswordSpec& spec, std::string_view guess,
                                    PaillierKeys keys, Rng& rng) {
  spec.check_password(guess);
  SubstringSession session{std::move(keys), {}};
  session.request.pk = session.keys.pk;
  for (std::size_t i = 0; i < window_count(spec); ++i) {
    session.request.ciphertexts.push_back(
        paillier_encrypt(session.keys.pk, window_tag(spec, guess, i), rng));
  }
  return session;
}

std::vector<mpz_class> spr_server_respond(const SubstringRecord& record,
                                          const SubstringRequest& request, Rng& rng,
                                          unsigned min_modulus_bits) {
  const PaillierPublicKey& pk = request.pk;
  if (pk.n_squared != pk.n * pk.n) throw Error(Errc::kMalformed, "inconsistent paillier key");
  if (mpz_sizeinbase(pk.n.get_mpz_t(), 2) < min_modulus_bits) {
    throw Error(Errc::kInvalidArgument, "paillier modulus below the accepted minimum");
  }
  if (request.ciphertexts.size() != record.blobs.size() ||
      record.tags.size() != record.blobs.size()) {
    throw Error(Errc::kInvalidArgument, "window count mismatch");
  }
  std::vector<mpz_class> out;
  out.reserve(record.blobs.size());
  for (std::size_t i = 0; i < record.blobs.size(); ++i) {
    const mpz_class& ct = request.ciphertexts[i];
    if (ct <= 0 || ct >= pk.n_squared) throw Error(Errc::kMalformed, "ciphertext out of range");
    if (record.blobs[i] >= pk.n || record.tags[i] >= pk.n) {
      throw Error(Errc::kInvalidArgument, "record does not fit the client modulus");
    }
    const mpz_class neg_tag = paillier_encrypt(pk, mod(pk.n - record.tags[i], pk.n), rng);
    const mpz_class diff = paillier_add(pk, ct, neg_tag);
    const mpz_class r = rng.below(pk.n - 1) + 1;  // never zero
    const mpz_class blinded = paillier_scale(pk, diff, r);
    out.push_back(paillier_add(pk, blinded, paillier_encrypt(pk, record.blobs[i], rng)));
  }
  return out;
}

std::optional<std::string> spr_client_finish(const PasswordSpec& spec,
                                             const PaillierKeys& keys,
                                             const std::vector<mpz_class>& responses,
                                             std::string_view guess) {
  spec.check_password(guess);
  if (responses.size() != window_count(spec)) {
    throw Error(Errc::kMalformed, "response count does not match window count");
  }
  for (std::size_t i = 0; i < responses.size(); ++i) {
    const mpz_class blob = paillier_decrypt(keys, responses[i]);
    auto p = sym_decrypt(window_key(spec, guess, i), blob);
    if (p && p->size() == spec.n) return p;
  }
  return std::nullopt;
}

}  // namespace pwrec
