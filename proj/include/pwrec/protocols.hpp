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
#ifndef PWREC_PROTOCOLS_HPP_
#define PWREC_PROTOCOLS_HPP_

#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pwrec/elgamal.hpp"
#include "pwrec/local_recovery.hpp"
#include "pwrec/ot.hpp"
#include "pwrec/threshold.hpp"

namespace pwrec {

using Clock = std::chrono::system_clock;

// Server-side authenticator of the hash-based login: H(p).
struct HashAuth {
  Scalar digest;
  friend bool operator==(const HashAuth&, const HashAuth&) = default;
};

// Authenticator of the challenge-response login: (g, d = g^{h(p)}).
struct ChalRespAuth {
  GroupElement g;
  GroupElement d;
  friend bool operator==(const ChalRespAuth&, const ChalRespAuth&) = default;
};

using Authenticator = std::variant<HashAuth, ChalRespAuth>;

// Public, unkeyed password hashes. H serves the hash login, h the
// challenge-response login.
Scalar login_hash(const Field& f, std::string_view password);
Scalar cr_hash(const Field& f, std::string_view password);

/**
 * What the server keeps per account for threshold-based recovery: the
 * threshold public key, both MAC keys, the encrypted password and the masked
 * shares y_i = alpha_i - g_i(p_i).
 */
struct RecoveryRecord {
  std::string login;
  PublicKey pk;
  MacKey v1;
  MacKey v2;
  Ciphertext c;
  std::vector<Scalar> ys;
  Authenticator auth;
  PasswordSpec spec;
  std::uint64_t attempts = 0;

  friend bool operator==(const RecoveryRecord&, const RecoveryRecord&) = default;
};

// What the client receives in a hash-based recovery. Never carries v2, the
// masked shares or any key share.
struct RecoveryResponse {
  MacKey v1;
  PublicKey pk;
  Ciphertext c_prime;
  std::vector<GroupElement> partials;
};

struct RecoverOutcome {
  std::optional<std::string> password;
  std::uint64_t subsets_tried = 0;
};

// --- hash-based login with improved recovery -----------------------------

RecoveryRecord hpr_register(const PasswordSpec& spec, const GroupParams& params,
                            std::string_view login, std::string_view password,
                            Rng& rng);
// Throws Errc::kUnknownLogin if the record belongs to another login.
bool hpr_login(const RecoveryRecord& record, std::string_view login,
               std::string_view password);
RecoveryResponse hpr_server_respond(const RecoveryRecord& record,
                                    std::string_view guess, Rng& rng);
RecoverOutcome hpr_client_recover(const PasswordSpec& spec,
                                  const RecoveryResponse& response,
                                  std::string_view guess);

// Client combine step shared by both recovery families: candidates
// (h_i(guess_i), partial_i), accepted when the plaintext decodes to a
// password that matches the guess.
RecoverOutcome combine_partials(const PasswordSpec& spec, const MacKey& v1,
                                const PublicKey& pk, const Ciphertext& c_prime,
                                std::span<const GroupElement> partials,
                                std::string_view guess);

// --- simple server-side recovery ------------------------------------------

struct SimpleRecord {
  std::string login;
  HashAuth auth;
  LocalBlob blob;
  std::uint64_t attempts = 0;

  friend bool operator==(const SimpleRecord&, const SimpleRecord&) = default;
};

SimpleRecord spr_simple_register(const PasswordSpec& spec,
                                 const GroupParams& params,
                                 std::string_view login,
                                 std::string_view password, Rng& rng);
std::optional<std::string> spr_simple_recover(const SimpleRecord& record,
                                              std::string_view guess);

// --- challenge-response login ---------------------------------------------

struct Challenge {
  GroupElement b;  // g^c
  Scalar c;        // server secret
  Clock::time_point expiry;
};

ChalRespAuth cr_register(const GroupParams& params, std::string_view password);
Challenge cr_challenge(const GroupParams& params, Rng& rng,
                       Clock::time_point expiry);
GroupElement cr_prove(const GroupParams& params, const GroupElement& b,
                      std::string_view password);
bool cr_verify(const GroupParams& params, const Challenge& challenge,
               const GroupElement& d, const GroupElement& proof);

// Outstanding challenges. Each may be redeemed once, before it expires.
class ChallengeTable {
 public:
  struct Entry {
    std::string login;
    Challenge challenge;
  };

  std::string issue(std::string login, Challenge challenge, Rng& rng);
  // Throws Errc::kReplayed for unknown or consumed ids and Errc::kExpired
  // for stale ones. Either way the id is consumed.
  Entry redeem(const std::string& id, Clock::time_point now);
  std::size_t outstanding() const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, Entry> live_;
};

// --- challenge-response recovery over OT ------------------------------------

RecoveryRecord crpr_register(const PasswordSpec& spec, const GroupParams& params,
                             std::string_view login, std::string_view password,
                             Rng& rng);

// First server message of an OT-based recovery.
struct CrRecoveryStart {
  std::string session;
  MacKey v1;
  PublicKey pk;
  Ciphertext c_prime;
  std::size_t n = 0;
  std::size_t m = 0;
};

std::string ot_position_session(std::string_view session, std::size_t position);

// Sender side. Holds the re-randomized ciphertext and answers one OT per
// position; S[j] = a'^{y_i + g_i(alphabet[j])}.
class CrprServerSession {
 public:
  CrprServerSession(const RecoveryRecord& record, std::string session, Rng& rng);

  const CrRecoveryStart& start() const { return start_; }
  // position is 0-based. Throws Errc::kInvalidArgument on a bad position
  // and Errc::kProtocol if that position was already answered.
  OtResponse respond(std::size_t position, const GroupElement& b, Rng& rng);
  bool complete() const;

 private:
  RecoveryRecord record_;
  CrRecoveryStart start_;
  std::vector<bool> answered_;
};

// Receiver side. Only B values leave this object.
class CrprClientSession {
 public:
  CrprClientSession(PasswordSpec spec, std::string guess);

  void begin(const CrRecoveryStart& start);
  GroupElement choose(std::size_t position, Rng& rng);
  void receive(std::size_t position, const OtResponse& response);
  RecoverOutcome finish() const;

 private:
  PasswordSpec spec_;
  std::string guess_;
  std::optional<CrRecoveryStart> start_;
  std::vector<std::optional<OtReceiverState>> states_;
  std::vector<std::optional<GroupElement>> partials_;
};

// Both ends in one process; what the acceptance suite drives.
RecoverOutcome crpr_recover_in_process(const RecoveryRecord& record,
                                       std::string_view guess, Rng& rng,
                                       std::uint64_t* server_exponentiations = nullptr);

}  // namespace pwrec

#endif  // PWREC_PROTOCOLS_HPP_
