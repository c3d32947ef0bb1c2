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
#ifndef PWREC_RNG_HPP_
#define PWREC_RNG_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include <gmpxx.h>

namespace pwrec {

// Source of random bytes. Every randomized operation takes one by reference
// so tests can inject a reproducible stream.
class Rng {
 public:
  virtual ~Rng() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  // Uniform integer in [0, bound). bound must be positive.
  mpz_class below(const mpz_class& bound);
  std::uint64_t below(std::uint64_t bound);
  bool coin();
};

// Operating-system randomness through OpenSSL's RAND_bytes.
class SystemRng final : public Rng {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

// SHA-256 in counter mode over a seed. Reproducible; test and harness use only.
class DeterministicRng final : public Rng {
 public:
  explicit DeterministicRng(std::uint64_t seed);
  explicit DeterministicRng(std::string_view seed);

  void fill(std::span<std::uint8_t> out) override;

 private:
  void refill();

  std::array<std::uint8_t, 32> seed_{};
  std::array<std::uint8_t, 32> block_{};
  std::uint64_t counter_ = 0;
  std::size_t used_ = 32;
};

}  // namespace pwrec

#endif  // PWREC_RNG_HPP_
