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
#include "pwrec/rng.hpp"

#include <cstring>

#include <openssl/rand.h>

#include "pwrec/bytes.hpp"
#include "pwrec/error.hpp"

namespace pwrec {

mpz_class Rng::below(const mpz_class& bound) {
  if (bound <= 0) throw Error(Errc::kInvalidArgument, "empty sampling range");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  Bytes buf((bits + 7) / 8);
  const unsigned excess = static_cast<unsigned>(buf.size() * 8 - bits);
  for (;;) {
    fill(buf);
    buf[0] &= static_cast<std::uint8_t>(0xff >> excess);
    mpz_class v = mpz_from_bytes(buf);
    if (v < bound) return v;
  }
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(Errc::kInvalidArgument, "empty sampling range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint8_t buf[8];
    fill(buf);
    std::uint64_t v = 0;
    for (auto b : buf) v = v << 8 | b;
    if (v < limit) return v % bound;
  }
}

bool Rng::coin() {
  std::uint8_t b = 0;
  fill({&b, 1});
  return (b & 1) != 0;
}

void SystemRng::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw Error(Errc::kIo, "RAND_bytes failed");
  }
}

DeterministicRng::DeterministicRng(std::uint64_t seed) {
  Bytes s = to_bytes("pwrec-drbg");
  for (int i = 7; i >= 0; --i) s.push_back(static_cast<std::uint8_t>(seed >> (8 * i)));
  seed_ = sha256(s);
}

DeterministicRng::DeterministicRng(std::string_view seed) {
  Bytes s = to_bytes("pwrec-drbg-str");
  s.insert(s.end(), seed.begin(), seed.end());
  seed_ = sha256(s);
}

void DeterministicRng::refill() {
  Bytes in(seed_.begin(), seed_.end());
  for (int i = 7; i >= 0; --i) in.push_back(static_cast<std::uint8_t>(counter_ >> (8 * i)));
  ++counter_;
  block_ = sha256(in);
  used_ = 0;
}

void DeterministicRng::fill(std::span<std::uint8_t> out) {
  std::size_t pos = 0;
  while (pos < out.size()) {
    if (used_ == block_.size()) refill();
    std::size_t n = std::min(out.size() - pos, block_.size() - used_);
    std::memcpy(out.data() + pos, block_.data() + used_, n);
    pos += n;
    used_ += n;
  }
}

}  // namespace pwrec
