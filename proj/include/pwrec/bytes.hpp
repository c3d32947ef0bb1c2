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
#ifndef PWREC_BYTES_HPP_
#define PWREC_BYTES_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace pwrec {

using Bytes = std::vector<std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> data);
Digest hmac_sha256(std::span<const std::uint8_t> key,
                   std::span<const std::uint8_t> data);

Bytes to_bytes(std::string_view s);
void append_u32(Bytes& out, std::uint32_t v);
// Length-prefixed append, so concatenations stay unambiguous.
void append_field(Bytes& out, std::span<const std::uint8_t> field);

// Big-endian magnitude; zero encodes as an empty vector.
Bytes mpz_to_bytes(const mpz_class& v);
mpz_class mpz_from_bytes(std::span<const std::uint8_t> bytes);
std::size_t byte_length(const mpz_class& v);

// Lowercase big-endian hex. Parsing accepts either case and throws
// Errc::kMalformed on anything else, including an empty string.
std::string to_hex(const mpz_class& v);
mpz_class mpz_from_hex(std::string_view hex);
std::string bytes_to_hex(std::span<const std::uint8_t> bytes);
Bytes bytes_from_hex(std::string_view hex);

bool constant_time_equal(std::span<const std::uint8_t> a,
                         std::span<const std::uint8_t> b);

}  // namespace pwrec

#endif  // PWREC_BYTES_HPP_
