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
#include "pwrec/elgamal.hpp"

namespace pwrec {

KeyPair elgamal_keygen(const GroupParams& params, Rng& rng) {
  return keypair_from_secret(params, random_scalar(params.field(), rng));
}

KeyPair keypair_from_secret(const GroupParams& params, const Scalar& sk) {
  return KeyPair{PublicKey{params, pow_g(params, sk)}, sk};
}

Ciphertext encrypt(const PublicKey& pk, const GroupElement& m, const Scalar& r) {
  const GroupParams& gp = pk.params;
  return Ciphertext{pow_g(gp, r), mul(gp, m, pow(gp, pk.h, r))};
}

Ciphertext encrypt(const PublicKey& pk, const GroupElement& m, Rng& rng) {
  return encrypt(pk, m, random_nonzero_scalar(pk.params.field(), rng));
}

GroupElement decrypt(const GroupParams& params, const Scalar& sk,
                     const Ciphertext& c) {
  return div(params, c.b, pow(params, c.a, sk));
}

Ciphertext rerandomize(const PublicKey& pk, const Ciphertext& c,
                       const Scalar& r_prime) {
  const GroupParams& gp = pk.params;
  return Ciphertext{mul(gp, c.a, pow_g(gp, r_prime)),
                    mul(gp, c.b, pow(gp, pk.h, r_prime))};
}

Ciphertext hom_mul(const GroupParams& params, const Ciphertext& c1,
                   const Ciphertext& c2) {
  return Ciphertext{mul(params, c1.a, c2.a), mul(params, c1.b, c2.b)};
}

}  // namespace pwrec
