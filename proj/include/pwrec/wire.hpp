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
#ifndef PWREC_WIRE_HPP_
#define PWREC_WIRE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "pwrec/bytes.hpp"
#include "pwrec/codec.hpp"
#include "pwrec/error.hpp"

namespace pwrec {

// Frame = 4-byte big-endian length || body. The body is UTF-8 JSON, or, when
// a pre-shared key is configured, HMAC-SHA256(psk, json) || json.
inline constexpr std::uint32_t kMaxFrameBytes = 16u << 20;

Bytes encode_frame(const Json& message, const std::optional<Bytes>& psk);
// Decodes a frame body (without the length prefix). Throws Errc::kProtocol
// on bad JSON, a missing "type" field or a MAC mismatch.
Json decode_frame_body(std::span<const std::uint8_t> body,
                       const std::optional<Bytes>& psk);

// Owning TCP socket.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  ~Socket();
  Socket(Socket&& other) noexcept;
  Socket& operator=(Socket&& other) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;

  int fd() const { return fd_; }
  bool valid() const { return fd_ >= 0; }
  void shutdown_both();
  void close();

 private:
  int fd_ = -1;
};

Socket connect_tcp(const std::string& host, std::uint16_t port);
Socket listen_tcp(const std::string& host, std::uint16_t port);
std::uint16_t local_port(const Socket& s);

void write_frame(const Socket& s, const Json& message, const std::optional<Bytes>& psk);
// nullopt on a clean end of stream before any byte of a new frame.
std::optional<Json> read_frame(const Socket& s, const std::optional<Bytes>& psk);

// Error frames: {"type":"Error","code":...,"message":...}.
Json error_frame(Errc code, const std::string& message);
Errc errc_from_name(const std::string& name);

}  // namespace pwrec

#endif  // PWREC_WIRE_HPP_
