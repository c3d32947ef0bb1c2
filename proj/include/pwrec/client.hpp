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
#ifndef PWREC_CLIENT_HPP_
#define PWREC_CLIENT_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "pwrec/codec.hpp"
#include "pwrec/rng.hpp"
#include "pwrec/wire.hpp"

namespace pwrec {

enum class Direction { kSent, kReceived };

/**
 * Synchronous client for the recovery service. All secret-dependent work
 * (share interpolation, OT choices, Paillier keys) stays in this process.
 * Error frames are rethrown as Error with the server's code.
 */
class Client {
 public:
  using Transcript = std::function<void(Direction, const Json&)>;

  Client(const std::string& host, std::uint16_t port, std::optional<Bytes> psk = std::nullopt);

  // Every frame sent or received passes through the callback first.
  void set_transcript(Transcript t) { transcript_ = std::move(t); }
  void set_paillier_bits(unsigned bits) { paillier_bits_ = bits; }

  // Fetched once and cached.
  const GroupParams& params();

  // Registration. Records for hpr, crpr and substring are built here; the
  // simple variant ships the password itself since the server keeps the blob.
  void register_hash(const PasswordSpec& spec, const std::string& login,
                     const std::string& password);
  void register_cr(const PasswordSpec& spec, const std::string& login,
                   const std::string& password);
  void register_substring(const PasswordSpec& spec, const std::string& login,
                          const std::string& password);
  void register_simple(const PasswordSpec& spec, const std::string& login,
                       const std::string& password);

  bool login_hash(const std::string& login, const std::string& password);
  bool login_cr(const std::string& login, const std::string& password);

  RecoverOutcome recover_hash(const PasswordSpec& spec, const std::string& login,
                              const std::string& guess);
  RecoverOutcome recover_cr(const PasswordSpec& spec, const std::string& login,
                            const std::string& guess);
  std::optional<std::string> recover_simple(const std::string& login, const std::string& guess);
  std::optional<std::string> recover_substring(const PasswordSpec& spec,
                                               const std::string& login,
                                               const std::string& guess);

  // Raw request/response, for tests and tools.
  Json call(const Json& request);

 private:
  Json expect(const Json& request, const char* type);
  void send_register(const std::string& kind, const Json& record);

  Socket sock_;
  std::optional<Bytes> psk_;
  std::optional<GroupParams> params_;
  Transcript transcript_;
  SystemRng rng_;
  unsigned paillier_bits_ = kDefaultPaillierBits;
};

}  // namespace pwrec

#endif  // PWREC_CLIENT_HPP_
