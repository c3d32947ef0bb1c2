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
#ifndef PWREC_STORE_HPP_
#define PWREC_STORE_HPP_

#include <chrono>
#include <deque>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "pwrec/codec.hpp"

namespace pwrec {

/**
 * Login -> record map persisted as JSON lines: a header line followed by one
 * record per line. Every mutation rewrites the file to a temporary and
 * renames it over the original before returning. An empty path keeps the
 * store in memory only.
 */
class AccountStore {
 public:
  static constexpr int kVersion = 1;

  explicit AccountStore(std::filesystem::path path = {});

  // Throws Errc::kDuplicateLogin if the login exists.
  void store(AccountRecord record);
  // Throws Errc::kUnknownLogin.
  AccountRecord lookup(const std::string& login) const;
  bool contains(const std::string& login) const;
  // Increments the lifetime attempt counter kept on the record.
  void note_attempt(const std::string& login);
  std::vector<AccountRecord> records() const;
  std::size_t size() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  void load();
  void flush_locked() const;

  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::map<std::string, AccountRecord> records_;
};

struct AttemptPolicyConfig {
  std::size_t max_attempts = 10;
  std::chrono::seconds lockout{15 * 60};
};

/**
 * Sliding-window attempt limiter. Attempts older than the lockout duration
 * fall out of the window; reaching max_attempts inside it locks the login
 * until now + lockout.
 */
class AttemptPolicy {
 public:
  using Clock = std::chrono::system_clock;

  struct Decision {
    bool allowed = true;
    Clock::time_point locked_until{};
  };

  explicit AttemptPolicy(AttemptPolicyConfig config = {});

  Decision rate_check(const std::string& login, Clock::time_point now) const;
  // Checks and, when allowed, counts one attempt atomically.
  Decision admit(const std::string& login, Clock::time_point now);
  void reset(const std::string& login);
  std::size_t attempts_in_window(const std::string& login, Clock::time_point now) const;
  const AttemptPolicyConfig& config() const { return config_; }

 private:
  struct State {
    std::deque<Clock::time_point> attempts;
    Clock::time_point locked_until{};
  };

  void prune(State& s, Clock::time_point now) const;

  AttemptPolicyConfig config_;
  mutable std::mutex mu_;
  mutable std::map<std::string, State> states_;
};

}  // namespace pwrec

#endif  // PWREC_STORE_HPP_
