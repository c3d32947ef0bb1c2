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
#ifndef PWREC_SERVER_HPP_
#define PWREC_SERVER_HPP_

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "pwrec/protocols.hpp"
#include "pwrec/store.hpp"
#include "pwrec/wire.hpp"

namespace pwrec {

struct ServerConfig {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;  // 0 picks a free port
  std::filesystem::path store_path;
  std::string mode = "toy";  // named parameter set: toy | real
  AttemptPolicyConfig policy;
  std::chrono::seconds challenge_ttl{60};
  unsigned min_paillier_bits = kMinPaillierBits;
  std::optional<Bytes> psk;
  std::function<Clock::time_point()> clock = [] { return Clock::now(); };
};

// Counters exposed for tests and the operator log.
struct ServerStats {
  std::atomic<std::uint64_t> sessions{0};
  std::atomic<std::uint64_t> recoveries{0};
  std::atomic<std::uint64_t> locked_refusals{0};
  std::atomic<std::uint64_t> last_hash_recovery_exponentiations{0};
  std::atomic<std::uint64_t> last_cr_recovery_exponentiations{0};
};

/**
 * Account-recovery service. One thread per connection; records and attempt
 * counters sit behind the store's and policy's locks, and the protocol work
 * itself runs on the session thread.
 */
class Server {
 public:
  // Per-connection protocol state.
  struct Session {
    std::string id;
    std::map<std::string, std::unique_ptr<CrprServerSession>> cr_recoveries;
    std::map<std::string, std::uint64_t> cr_work;
  };

  explicit Server(ServerConfig config);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  void start();
  void stop();
  // Blocks until stop() is called from another thread.
  void wait();
  std::uint16_t port() const { return port_; }

  // Handles one request. Errors come back as Error frames; the second member
  // tells the transport to drop the connection afterwards.
  std::pair<Json, bool> handle(const Json& request, Session& session);

  const GroupParams& params() const { return params_; }
  AccountStore& store() { return store_; }
  AttemptPolicy& policy() { return policy_; }
  const ServerStats& stats() const { return stats_; }

 private:
  Json dispatch(const Json& request, Session& session);
  Json on_register(const Json& req);
  Json on_login_hash(const Json& req);
  Json on_login_cr_start(const Json& req);
  Json on_login_cr_proof(const Json& req);
  Json on_recover_hash(const Json& req, Session& session);
  Json on_recover_simple(const Json& req, Session& session);
  Json on_recover_cr_start(const Json& req, Session& session);
  Json on_recover_cr_choose(const Json& req, Session& session);
  Json on_spr_request(const Json& req, Session& session);

  void admit(const std::string& login);
  void serve_connection(std::shared_ptr<Socket> sock);
  void accept_loop();

  ServerConfig config_;
  GroupParams params_;
  AccountStore store_;
  AttemptPolicy policy_;
  ChallengeTable challenges_;
  ServerStats stats_;

  Socket listener_;
  std::uint16_t port_ = 0;
  std::atomic<bool> running_{false};
  std::thread acceptor_;
  std::mutex conn_mu_;
  std::list<std::pair<std::shared_ptr<Socket>, std::thread>> connections_;
  std::mutex stop_mu_;
  std::condition_variable stopped_cv_;
};

}  // namespace pwrec

#endif  // PWREC_SERVER_HPP_
