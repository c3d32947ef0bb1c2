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
#ifndef PWREC_ELGAMAL_HPP_
#define PWREC_ELGAMAL_HPP_

#include "pwrec/group.hpp"

namespace pwrec {

struct PublicKey {
  GroupParams params;
  GroupElement h;  // g^sk

  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct KeyPair {
  PublicKey pk;
  Scalar sk;
};

// (a, b) = (g^r, m h^r)
struct Ciphertext {
  GroupElement a;
  GroupElement b;

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

KeyPair elgamal_keygen(const GroupParams& params, Rng& rng);
KeyPair keypair_from_secret(const GroupParams& params, const Scalar& sk);

Ciphertext encrypt(const PublicKey& pk, const GroupElement& m, const Scalar& r);
// Draws r from [1, q-1]; r = 0 would publish m in the clear.
Ciphertext encrypt(const PublicKey& pk, const GroupElement& m, Rng& rng);
GroupElement decrypt(const GroupParams& params, const Scalar& sk,
                     const Ciphertext& c);

// (a g^r', b h^r'); same plaintext, fresh-looking ciphertext.
Ciphertext rerandomize(const PublicKey& pk, const Ciphertext& c,
                       const Scalar& r_prime);
// Componentwise product; decrypts to the product of the plaintexts.
Ciphertext hom_mul(const GroupParams& params, const Ciphertext& c1,
                   const Ciphertext& c2);

}  // namespace pwrec

#endif  // PWREC_ELGAMAL_HPP_
