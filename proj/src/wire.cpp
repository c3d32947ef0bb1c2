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
#include "pwrec/wire.hpp"

#include <cerrno>
#include <cstring>

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include "pwrec/error.hpp"

namespace pwrec {
namespace {

constexpr std::size_t kMacBytes = 32;

void write_all(int fd, const std::uint8_t* data, std::size_t len) {
  while (len > 0) {
    ssize_t n = ::send(fd, data, len, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(Errc::kIo, std::string("send: ") + std::strerror(errno));
    }
    data += n;
    len -= static_cast<std::size_t>(n);
  }
}

// Returns bytes read; less than len only at end of stream.
std::size_t read_all(int fd, std::uint8_t* data, std::size_t len) {
  std::size_t got = 0;
  while (got < len) {
    ssize_t n = ::recv(fd, data + got, len - got, 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(Errc::kIo, std::string("recv: ") + std::strerror(errno));
    }
    if (n == 0) break;
    got += static_cast<std::size_t>(n);
  }
  return got;
}

}  // namespace

Bytes encode_frame(const Json& message, const std::optional<Bytes>& psk) {
  const std::string json = message.dump();
  Bytes body;
  if (psk) {
    const Digest mac = hmac_sha256(*psk, to_bytes(json));
    body.insert(body.end(), mac.begin(), mac.end());
  }
  body.insert(body.end(), json.begin(), json.end());
  if (body.size() > kMaxFrameBytes) throw Error(Errc::kProtocol, "frame too large");
  Bytes frame;
  append_u32(frame, static_cast<std::uint32_t>(body.size()));
  frame.insert(frame.end(), body.begin(), body.end());
  return frame;
}

Json decode_frame_body(std::span<const std::uint8_t> body,
                       const std::optional<Bytes>& psk) {
  if (psk) {
    if (body.size() < kMacBytes) throw Error(Errc::kProtocol, "frame shorter than its MAC");
    const auto json = body.subspan(kMacBytes);
    const Digest mac = hmac_sha256(*psk, json);
    if (!constant_time_equal(mac, body.first(kMacBytes))) {
      throw Error(Errc::kProtocol, "frame MAC mismatch");
    }
    body = json;
  }
  Json j = Json::parse(body.begin(), body.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(Errc::kProtocol, "frame is not a JSON object");
  auto it = j.find("type");
  if (it == j.end() || !it->is_string()) throw Error(Errc::kProtocol, "frame has no type");
  return j;
}

Socket::~Socket() { close(); }

Socket::Socket(Socket&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

Socket& Socket::operator=(Socket&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = other.fd_;
    other.fd_ = -1;
  }
  return *this;
}

void Socket::shutdown_both() {
  if (fd_ >= 0) ::shutdown(fd_, SHUT_RDWR);
}

void Socket::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

Socket connect_tcp(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0) {
    throw Error(Errc::kIo, std::string("resolve ") + host + ": " + gai_strerror(rc));
  }
  std::string last = "no addresses";
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    Socket s(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
    if (!s.valid()) continue;
    if (::connect(s.fd(), ai->ai_addr, ai->ai_addrlen) == 0) {
      ::freeaddrinfo(res);
      int one = 1;
      ::setsockopt(s.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
      return s;
    }
    last = std::strerror(errno);
  }
  ::freeaddrinfo(res);
  throw Error(Errc::kIo, "connect " + host + ":" + service + ": " + last);
}

Socket listen_tcp(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (int rc = ::getaddrinfo(host.empty() ? nullptr : host.c_str(), service.c_str(), &hints,
                             &res);
      rc != 0) {
    throw Error(Errc::kIo, std::string("resolve ") + host + ": " + gai_strerror(rc));
  }
  std::string last = "no addresses";
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    Socket s(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
    if (!s.valid()) continue;
    int one = 1;
    ::setsockopt(s.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(s.fd(), ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(s.fd(), 64) == 0) {
      ::freeaddrinfo(res);
      return s;
    }
    last = std::strerror(errno);
  }
  ::freeaddrinfo(res);
  throw Error(Errc::kIo, "bind " + host + ":" + service + ": " + last);
}

std::uint16_t local_port(const Socket& s) {
  sockaddr_storage addr{};
  socklen_t len = sizeof addr;
  if (::getsockname(s.fd(), reinterpret_cast<sockaddr*>(&addr), &len) != 0) {
    throw Error(Errc::kIo, "getsockname failed");
  }
  if (addr.ss_family == AF_INET6) {
    return ntohs(reinterpret_cast<sockaddr_in6*>(&addr)->sin6_port);
  }
  return ntohs(reinterpret_cast<sockaddr_in*>(&addr)->sin_port);
}

void write_frame(const Socket& s, const Json& message, const std::optional<Bytes>& psk) {
  const Bytes frame = encode_frame(message, psk);
  write_all(s.fd(), frame.data(), frame.size());
}

std::optional<Json> read_frame(const Socket& s, const std::optional<Bytes>& psk) {
  std::uint8_t header[4];
  const std::size_t got = read_all(s.fd(), header, sizeof header);
  if (got == 0) return std::nullopt;
  if (got < sizeof header) throw Error(Errc::kProtocol, "truncated frame header");
  const std::uint32_t len = std::uint32_t{header[0]} << 24 | std::uint32_t{header[1]} << 16 |
                            std::uint32_t{header[2]} << 8 | header[3];
  if (len > kMaxFrameBytes) throw Error(Errc::kProtocol, "frame too large");
  Bytes body(len);
  if (read_all(s.fd(), body.data(), len) < len) throw Error(Errc::kProtocol, "truncated frame");
  return decode_frame_body(body, psk);
}

Json error_frame(Errc code, const std::string& message) {
  return {{"type", "Error"}, {"code", errc_name(code)}, {"message", message}};
}

Errc errc_from_name(const std::string& name) {
  for (int c = static_cast<int>(Errc::kInvalidArgument); c <= static_cast<int>(Errc::kProtocol);
       ++c) {
    if (name == errc_name(static_cast<Errc>(c))) return static_cast<Errc>(c);
  }
  return Errc::kProtocol;
}

}  // namespace pwrec
