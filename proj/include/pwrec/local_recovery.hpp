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
#ifndef PWREC_LOCAL_RECOVERY_HPP_
#define PWREC_LOCAL_RECOVERY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pwrec/group.hpp"
#include "pwrec/polynomial.hpp"

namespace pwrec {

// Printable ASCII, 0x20..0x7e.
std::string default_alphabet();

/**
 * Shape of the passwords a deployment accepts: an ordered alphabet, a fixed
 * length n and the similarity threshold t.
 */
struct PasswordSpec {
  std::string alphabet = default_alphabet();
  std::size_t n = 8;
  std::size_t t = 5;

  std::size_t alphabet_size() const { return alphabet.size(); }
  // |alphabet|^n, the number of representable passwords.
  mpz_class password_space() const;
  // Position of c in the alphabet, or nullopt.
  std::optional<std::size_t> index_of(char c) const;

  // Throws Errc::kInvalidArgument if 1 <= t <= n fails, the alphabet is
  // empty or repeats a character.
  void validate() const;
  // Additionally requires every password to pack below q.
  void validate(const Field& f) const;
  // Throws Errc::kInvalidArgument unless p has length n over the alphabet.
  void check_password(std::string_view p) const;

  friend bool operator==(const PasswordSpec&, const PasswordSpec&) = default;
};

// True iff x and y agree in at least t positions. Throws on length mismatch.
bool match(std::string_view x, std::string_view y, std::size_t t);

// Base-|alphabet| positional packing, most significant character first.
mpz_class encode_password(const PasswordSpec& spec, std::string_view p);
// Inverse of encode_password; nullopt if v is not below |alphabet|^n.
std::optional<std::string> decode_password(const PasswordSpec& spec,
                                           const mpz_class& v);

struct LocalBlob {
  static constexpr int kVersion = 1;

  MacKey v;
  std::vector<Scalar> offsets;  // s_i - g_i(p_i)
  PasswordSpec spec;
  Field field;

  friend bool operator==(const LocalBlob&, const LocalBlob&) = default;
};

// Keyed hash families h_i and g_i evaluated on one password character.
// Positions are 1-based, as in the tags "h1", "g1", ...
Scalar position_coordinate(const Field& f, const MacKey& key, std::size_t pos,
                           char c);
Scalar position_mask(const Field& f, const MacKey& key, std::size_t pos, char c);

LocalBlob local_register(const PasswordSpec& spec, const Field& field,
                         std::string_view p, Rng& rng);
// Registration with a caller-chosen key; fails with kCollisionExhausted if
// the key maps two positions to the same coordinate or to zero.
LocalBlob local_register_with_key(const PasswordSpec& spec, const Field& field,
                                  std::string_view p, const MacKey& v, Rng& rng);

struct LocalRecoverResult {
  std::optional<std::string> password;
  std::uint64_t subsets_tried = 0;
};

LocalRecoverResult local_recover(const LocalBlob& blob, std::string_view guess);

/**
 * One draw from the n-subsets-of-m-points distribution hiding P(0). The
 * hidden polynomial has degree t-1, so t on-polynomial points determine it.
 */
struct AssumptionInstance {
  struct Point {
    Scalar x;
    Scalar y;
  };
  std::vector<std::vector<Point>> subsets;
  // Trace for tests: which member of each subset lies on the polynomial,
  // and the polynomial itself.
  std::vector<std::size_t> on_polynomial;
  Polynomial polynomial;
};

AssumptionInstance sample_assumption_instance(std::size_t n, std::size_t m,
                                              std::size_t t, const Scalar& alpha,
                                              const Field& field, Rng& rng);

}  // namespace pwrec

#endif  // PWREC_LOCAL_RECOVERY_HPP_
