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
#include "pwrec/store.hpp"

#include <fstream>
#include <system_error>

#include <fcntl.h>
#include <unistd.h>

#include "pwrec/error.hpp"

namespace pwrec {
namespace {

void fsync_path(const std::filesystem::path& p) {
  int fd = ::open(p.c_str(), O_RDONLY);
  if (fd < 0) return;
  ::fsync(fd);
  ::close(fd);
}

}  // namespace

AccountStore::AccountStore(std::filesystem::path path) : path_(std::move(path)) {
  if (!path_.empty() && std::filesystem::exists(path_)) load();
}

void AccountStore::load() {
  std::ifstream in(path_);
  if (!in) throw Error(Errc::kIo, "cannot open store " + path_.string());
  std::string line;
  if (!std::getline(in, line)) return;
  try {
    const Json header = Json::parse(line);
    if (get_string(header, "format") != "pwrec-store" ||
        header.value("version", 0) != kVersion) {
      throw Error(Errc::kIo, "unsupported store header");
    }
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      AccountRecord rec = decode_account(Json::parse(line));
      std::string login = account_login(rec);
      records_.insert_or_assign(std::move(login), std::move(rec));
    }
  } catch (const Json::exception& e) {
    throw Error(Errc::kIo, std::string("corrupt store: ") + e.what());
  } catch (const Error& e) {
    throw Error(Errc::kIo, std::string("corrupt store: ") + e.what());
  }
}

void AccountStore::flush_locked() const {
  if (path_.empty()) return;
  std::filesystem::path tmp = path_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(Errc::kIo, "cannot write " + tmp.string());
    out << Json{{"format", "pwrec-store"}, {"version", kVersion}}.dump() << '\n';
    for (const auto& [login, rec] : records_) out << encode(rec).dump() << '\n';
    out.flush();
    if (!out) throw Error(Errc::kIo, "short write to " + tmp.string());
  }
  fsync_path(tmp);
  std::error_code ec;
  std::filesystem::rename(tmp, path_, ec);
  if (ec) throw Error(Errc::kIo, "rename failed: " + ec.message());
}

void AccountStore::store(AccountRecord record) {
  std::lock_guard lock(mu_);
  std::string login = account_login(record);
  if (records_.count(login) != 0) throw Error(Errc::kDuplicateLogin, "login already registered");
  records_.emplace(login, std::move(record));
  try {
    flush_locked();
  } catch (...) {
    records_.erase(login);
    throw;
  }
}

AccountRecord AccountStore::lookup(const std::string& login) const {
  std::lock_guard lock(mu_);
  auto it = records_.find(login);
  if (it == records_.end()) throw Error(Errc::kUnknownLogin, "unknown login");
  return it->second;
}

bool AccountStore::contains(const std::string& login) const {
  std::lock_guard lock(mu_);
  return records_.count(login) != 0;
}

void AccountStore::note_attempt(const std::string& login) {
  std::lock_guard lock(mu_);
  auto it = records_.find(login);
  if (it == records_.end()) throw Error(Errc::kUnknownLogin, "unknown login");
  std::visit([](auto& r) { ++r.attempts; }, it->second);
  flush_locked();
}

std::vector<AccountRecord> AccountStore::records() const {
  std::lock_guard lock(mu_);
  std::vector<AccountRecord> out;
  for (const auto& [login, rec] : records_) out.push_back(rec);
  return out;
}

std::size_t AccountStore::size() const {
  std::lock_guard lock(mu_);
  return records_.size();
}

AttemptPolicy::AttemptPolicy(AttemptPolicyConfig config) : config_(config) {
  if (config_.max_attempts == 0) {
    throw Error(Errc::kInvalidArgument, "max_attempts must be positive");
  }
}

void AttemptPolicy::prune(State& s, Clock::time_point now) const {
  while (!s.attempts.empty() && s.attempts.front() + config_.lockout <= now) {
    s.attempts.pop_front();
  }
}

AttemptPolicy::Decision AttemptPolicy::rate_check(const std::string& login,
                                                  Clock::time_point now) const {
  std::lock_guard lock(mu_);
  auto it = states_.find(login);
  if (it == states_.end()) return {};
  if (it->second.locked_until > now) return {false, it->second.locked_until};
  return {};
}

AttemptPolicy::Decision AttemptPolicy::admit(const std::string& login,
                                             Clock::time_point now) {
  std::lock_guard lock(mu_);
  State& s = states_[login];
  if (s.locked_until > now) return {false, s.locked_until};
  prune(s, now);
  s.attempts.push_back(now);
  if (s.attempts.size() >= config_.max_attempts) {
    s.locked_until = now + config_.lockout;
    s.attempts.clear();
  }
  return {};
}

void AttemptPolicy::reset(const std::string& login) {
  std::lock_guard lock(mu_);
  states_.erase(login);
}

std::size_t AttemptPolicy::attempts_in_window(const std::string& login,
                                              Clock::time_point now) const {
  std::lock_guard lock(mu_);
  auto it = states_.find(login);
  if (it == states_.end()) return 0;
  prune(it->second, now);
  return it->second.attempts.size();
}

}  // namespace pwrec
