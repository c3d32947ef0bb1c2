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
#include "pwrec/server.hpp"

#include <sys/socket.h>

#include <cstdlib>
#include <mutex>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "pwrec/error.hpp"
#include "pwrec/substring.hpp"

namespace pwrec {
namespace {

// Logs go to stderr; PWREC_LOG_LEVEL picks the level (default "info").
void configure_logging() {
  static std::once_flag once;
  std::call_once(once, [] {
    auto logger = spdlog::stderr_color_mt("pwrec");
    const char* level = std::getenv("PWREC_LOG_LEVEL");
    logger->set_level(level != nullptr ? spdlog::level::from_str(level) : spdlog::level::info);
    spdlog::set_default_logger(logger);
  });
}

Rng& session_rng() {
  thread_local SystemRng rng;
  return rng;
}

std::string new_id() {
  Bytes id(8);
  session_rng().fill(id);
  return bytes_to_hex(id);
}

Json params_json(const GroupParams& params, const std::string& mode) {
  Json j = encode(params);
  j["type"] = "Params";
  j["mode"] = mode;
  return j;
}

template <typename Record>
const Record& expect_kind(const AccountRecord& rec, const char* what) {
  const auto* r = std::get_if<Record>(&rec);
  if (r == nullptr) throw Error(Errc::kInvalidArgument, std::string("account does not support ") + what);
  return *r;
}

}  // namespace

Server::Server(ServerConfig config)
    : config_(std::move(config)),
      params_(named_params(config_.mode)),
      store_(config_.store_path),
      policy_(config_.policy) {
  configure_logging();
}

Server::~Server() { stop(); }

void Server::start() {
  listener_ = listen_tcp(config_.host, config_.port);
  port_ = local_port(listener_);
  running_ = true;
  acceptor_ = std::thread([this] { accept_loop(); });
  spdlog::info("listening on {}:{} mode={} store={}", config_.host, port_, config_.mode,
               config_.store_path.string());
}

void Server::stop() {
  if (!running_.exchange(false)) return;
  listener_.shutdown_both();
  if (acceptor_.joinable()) acceptor_.join();
  listener_.close();
  std::list<std::pair<std::shared_ptr<Socket>, std::thread>> conns;
  {
    std::lock_guard lock(conn_mu_);
    conns.swap(connections_);
  }
  for (auto& [sock, th] : conns) sock->shutdown_both();
  for (auto& [sock, th] : conns) {
    if (th.joinable()) th.join();
  }
  std::lock_guard lock(stop_mu_);
  stopped_cv_.notify_all();
}

void Server::wait() {
  std::unique_lock lock(stop_mu_);
  stopped_cv_.wait(lock, [this] { return !running_; });
}

void Server::accept_loop() {
  while (running_) {
    int fd = ::accept(listener_.fd(), nullptr, nullptr);
    if (fd < 0) {
      if (!running_) break;
      if (errno == EINTR || errno == ECONNABORTED) continue;
      break;
    }
    auto sock = std::make_shared<Socket>(fd);
    std::lock_guard lock(conn_mu_);
    // Reap finished connections so the list does not grow without bound.
    for (auto it = connections_.begin(); it != connections_.end();) {
      if (it->first.use_count() == 1 && it->second.joinable()) {
        it->second.join();
        it = connections_.erase(it);
      } else {
        ++it;
      }
    }
    connections_.emplace_back(sock, std::thread([this, sock] { serve_connection(sock); }));
  }
}

void Server::serve_connection(std::shared_ptr<Socket> sock) {
  Session session;
  session.id = new_id();
  ++stats_.sessions;
  spdlog::debug("session={} opened", session.id);
  try {
    for (;;) {
      std::optional<Json> req;
      try {
        req = read_frame(*sock, config_.psk);
      } catch (const Error& e) {
        if (e.code() == Errc::kIo) break;
        spdlog::warn("session={} protocol error: {}", session.id, e.what());
        write_frame(*sock, error_frame(Errc::kProtocol, e.what()), config_.psk);
        break;
      }
      if (!req) break;
      auto [resp, close] = handle(*req, session);
      write_frame(*sock, resp, config_.psk);
      if (close) break;
    }
  } catch (const std::exception& e) {
    spdlog::debug("session={} transport error: {}", session.id, e.what());
  }
  spdlog::debug("session={} closed", session.id);
  sock->shutdown_both();
}

std::pair<Json, bool> Server::handle(const Json& request, Session& session) {
  try {
    return {dispatch(request, session), false};
  } catch (const Error& e) {
    const bool fatal = e.code() == Errc::kMalformed || e.code() == Errc::kProtocol;
    const Errc code = fatal ? Errc::kProtocol : e.code();
    spdlog::info("session={} type={} error={} msg={}", session.id,
                 request.value("type", "?"), errc_name(code), e.what());
    return {error_frame(code, e.what()), fatal};
  } catch (const Json::exception& e) {
    return {error_frame(Errc::kProtocol, e.what()), true};
  }
}

Json Server::dispatch(const Json& req, Session& session) {
  if (!req.is_object() || !req.contains("type") || !req["type"].is_string()) {
    throw Error(Errc::kProtocol, "request has no type");
  }
  const std::string type = req["type"].get<std::string>();
  if (type == "GetParams") return params_json(params_, config_.mode);
  if (type == "Register") return on_register(req);
  if (type == "LoginHash") return on_login_hash(req);
  if (type == "LoginCrStart") return on_login_cr_start(req);
  if (type == "LoginCrProof") return on_login_cr_proof(req);
  if (type == "RecoverHashRequest") return on_recover_hash(req, session);
  if (type == "RecoverSimpleRequest") return on_recover_simple(req, session);
  if (type == "RecoverCrStart") return on_recover_cr_start(req, session);
  if (type == "RecoverCrOtChoose") return on_recover_cr_choose(req, session);
  if (type == "SprRequest") return on_spr_request(req, session);
  throw Error(Errc::kProtocol, "unknown message type: " + type);
}

void Server::admit(const std::string& login) {
  if (!store_.contains(login)) throw Error(Errc::kUnknownLogin, "unknown login");
  const auto decision = policy_.admit(login, config_.clock());
  if (!decision.allowed) {
    ++stats_.locked_refusals;
    const auto until = std::chrono::duration_cast<std::chrono::seconds>(
                           decision.locked_until.time_since_epoch())
                           .count();
    throw Error(Errc::kLocked, "account locked until " + std::to_string(until));
  }
  store_.note_attempt(login);
  ++stats_.recoveries;
}

Json Server::on_register(const Json& req) {
  const std::string kind = get_string(req, "kind");
  AccountRecord record;
  if (kind == "simple") {
    const PasswordSpec spec = decode_spec(require(req, "spec"));
    const std::string password = get_string(req, "password");
    record = spr_simple_register(spec, params_, get_string(req, "login"), password,
                                 session_rng());
  } else {
    record = decode_account(require(req, "record"));
    if (account_kind(record) != kind) throw Error(Errc::kMalformed, "record kind mismatch");
    const GroupParams* gp = nullptr;
    if (const auto* r = std::get_if<RecoveryRecord>(&record)) gp = &r->pk.params;
    if (const auto* r = std::get_if<SubstringRecord>(&record)) gp = &r->params;
    if (gp == nullptr || !(*gp == params_)) {
      throw Error(Errc::kInvalidArgument, "record uses a different group");
    }
    std::visit([](auto& r) { r.attempts = 0; }, record);
  }
  const std::string login = account_login(record);
  if (login.empty()) throw Error(Errc::kInvalidArgument, "empty login");
  store_.store(std::move(record));
  spdlog::info("registered login={} kind={}", login, kind);
  return {{"type", "Registered"}, {"login", login}};
}

Json Server::on_login_hash(const Json& req) {
  const std::string login = get_string(req, "login");
  const std::string password = get_string(req, "password");
  const AccountRecord rec = store_.lookup(login);
  bool accepted = false;
  if (const auto* r = std::get_if<RecoveryRecord>(&rec)) {
    accepted = hpr_login(*r, login, password);
  } else if (const auto* s = std::get_if<SimpleRecord>(&rec)) {
    accepted = login_hash(s->blob.field, password) == s->auth.digest;
  } else {
    throw Error(Errc::kInvalidArgument, "account uses challenge-response login");
  }
  return {{"type", "LoginResult"}, {"accepted", accepted}};
}

Json Server::on_login_cr_start(const Json& req) {
  const std::string login = get_string(req, "login");
  const AccountRecord rec = store_.lookup(login);
  const GroupParams* gp = nullptr;
  if (const auto* r = std::get_if<RecoveryRecord>(&rec);
      r != nullptr && std::holds_alternative<ChalRespAuth>(r->auth)) {
    gp = &r->pk.params;
  } else if (const auto* s = std::get_if<SubstringRecord>(&rec)) {
    gp = &s->params;
  }
  if (gp == nullptr) throw Error(Errc::kInvalidArgument, "account uses hash login");
  Challenge ch = cr_challenge(*gp, session_rng(), config_.clock() + config_.challenge_ttl);
  const std::string b = to_hex(ch.b.value);
  const std::string id = challenges_.issue(login, std::move(ch), session_rng());
  return {{"type", "Challenge"}, {"id", id}, {"b", b}};
}

Json Server::on_login_cr_proof(const Json& req) {
  const std::string id = get_string(req, "id");
  const mpz_class proof_raw = get_int(req, "proof");
  const ChallengeTable::Entry entry = challenges_.redeem(id, config_.clock());
  const AccountRecord rec = store_.lookup(entry.login);
  ChalRespAuth auth;
  GroupParams gp;
  if (const auto* r = std::get_if<RecoveryRecord>(&rec)) {
    auth = std::get<ChalRespAuth>(r->auth);
    gp = r->pk.params;
  } else {
    const auto& s = std::get<SubstringRecord>(rec);
    auth = s.auth;
    gp = s.params;
  }
  bool accepted = false;
  if (is_element(gp, proof_raw)) {
    accepted = cr_verify(gp, entry.challenge, auth.d, GroupElement{proof_raw});
  }
  return {{"type", "LoginResult"}, {"accepted", accepted}};
}

Json Server::on_recover_hash(const Json& req, Session& session) {
  const std::string login = get_string(req, "login");
  const std::string guess = get_string(req, "guess");
  const RecoveryRecord record =
      expect_kind<RecoveryRecord>(store_.lookup(login), "hash recovery");
  if (!std::holds_alternative<HashAuth>(record.auth)) {
    throw Error(Errc::kInvalidArgument, "account uses challenge-response recovery");
  }
  record.spec.check_password(guess);
  admit(login);
  ExponentiationMeter meter;
  const RecoveryResponse resp = hpr_server_respond(record, guess, session_rng());
  stats_.last_hash_recovery_exponentiations = meter.elapsed();
  spdlog::info("session={} op=recover-hash login={} exps={}", session.id, login,
               meter.elapsed());

  Json partials = Json::array();
  for (const auto& d : resp.partials) partials.push_back(to_hex(d.value));
  return {{"type", "RecoverHashResponse"},
          {"v1", bytes_to_hex(resp.v1.bytes())},
          {"pk", encode(resp.pk)},
          {"c", encode(resp.c_prime)},
          {"partials", partials}};
}

Json Server::on_recover_simple(const Json& req, Session& session) {
  const std::string login = get_string(req, "login");
  const std::string guess = get_string(req, "guess");
  const SimpleRecord record = expect_kind<SimpleRecord>(store_.lookup(login), "simple recovery");
  record.blob.spec.check_password(guess);
  admit(login);
  auto recovered = spr_simple_recover(record, guess);
  spdlog::info("session={} op=recover-simple login={} ok={}", session.id, login,
               recovered.has_value());
  if (recovered) {
    policy_.reset(login);
    return {{"type", "RecoverSimpleResponse"}, {"recovered", true}, {"password", *recovered}};
  }
  return {{"type", "RecoverSimpleResponse"}, {"recovered", false}};
}

Json Server::on_recover_cr_start(const Json& req, Session& session) {
  const std::string login = get_string(req, "login");
  const RecoveryRecord record =
      expect_kind<RecoveryRecord>(store_.lookup(login), "challenge-response recovery");
  if (!std::holds_alternative<ChalRespAuth>(record.auth)) {
    throw Error(Errc::kInvalidArgument, "account uses hash recovery");
  }
  admit(login);
  ExponentiationMeter meter;
  auto cr = std::make_unique<CrprServerSession>(record, new_id(), session_rng());
  const CrRecoveryStart& start = cr->start();
  const std::string sid = start.session;
  Json out{{"type", "RecoverCrStarted"},
           {"session", sid},
           {"v1", bytes_to_hex(start.v1.bytes())},
           {"pk", encode(start.pk)},
           {"c", encode(start.c_prime)},
           {"n", start.n},
           {"m", start.m}};
  session.cr_work[sid] = meter.elapsed();
  session.cr_recoveries[sid] = std::move(cr);
  return out;
}

Json Server::on_recover_cr_choose(const Json& req, Session& session) {
  const std::string sid = get_string(req, "session");
  auto it = session.cr_recoveries.find(sid);
  if (it == session.cr_recoveries.end()) throw Error(Errc::kProtocol, "unknown recovery session");
  CrprServerSession& cr = *it->second;
  const std::size_t index = get_size(req, "index");
  const GroupElement b = get_element(cr.start().pk.params, req, "B");
  ExponentiationMeter meter;
  const OtResponse resp = cr.respond(index, b, session_rng());
  session.cr_work[sid] += meter.elapsed();
  Json out{{"type", "RecoverCrOtRespond"},
           {"session", sid},
           {"index", index},
           {"slots", encode(resp)}};
  if (cr.complete()) {
    stats_.last_cr_recovery_exponentiations = session.cr_work[sid];
    spdlog::info("session={} op=recover-cr exps={}", session.id, session.cr_work[sid]);
    session.cr_recoveries.erase(it);
    session.cr_work.erase(sid);
  }
  return out;
}

Json Server::on_spr_request(const Json& req, Session& session) {
  const std::string login = get_string(req, "login");
  const SubstringRecord record =
      expect_kind<SubstringRecord>(store_.lookup(login), "substring recovery");
  SubstringRequest request;
  request.pk = paillier_public_key(get_int(req, "N"));
  const Json& cts = require(req, "ciphertexts");
  if (!cts.is_array()) throw Error(Errc::kMalformed, "ciphertexts must be an array");
  for (const auto& c : cts) {
    if (!c.is_string()) throw Error(Errc::kMalformed, "ciphertext must be hex");
    request.ciphertexts.push_back(mpz_from_hex(c.get<std::string>()));
  }
  admit(login);
  const auto resp = spr_server_respond(record, request, session_rng(), config_.min_paillier_bits);
  spdlog::info("session={} op=recover-substring login={}", session.id, login);
  Json out = Json::array();
  for (const auto& c : resp) out.push_back(to_hex(c));
  return {{"type", "SprRespond"}, {"ciphertexts", out}};
}

}  // namespace pwrec
