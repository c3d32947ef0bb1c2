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
#include "pwrec/protocols.hpp"

#include <algorithm>

#include "pwrec/error.hpp"

namespace pwrec {
namespace {

constexpr int kMaxKeyResamples = 64;

const MacKey& public_hash_key() {
  static const MacKey key(Bytes{}, 0);
  return key;
}

std::string random_id(Rng& rng) {
  Bytes id(16);
  rng.fill(id);
  return bytes_to_hex(id);
}

RecoveryRecord threshold_register(const PasswordSpec& spec,
                                  const GroupParams& params,
                                  std::string_view login,
                                  std::string_view password, Rng& rng) {
  const Field f = params.field();
  spec.validate(f);
  spec.check_password(password);

  for (int attempt = 0; attempt < kMaxKeyResamples; ++attempt) {
    MacKey v1 = MacKey::random(rng);
    std::vector<Scalar> xs;
    xs.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
      xs.push_back(position_coordinate(f, v1, i + 1, password[i]));
    }
    const bool zero = std::any_of(xs.begin(), xs.end(),
                                  [](const Scalar& x) { return x.value == 0; });
    if (zero || has_duplicates(xs)) continue;

    RecoveryRecord record;
    record.login = std::string(login);
    record.spec = spec;
    record.v1 = std::move(v1);
    record.v2 = MacKey::random(rng);
    ThresholdKey key = keygen_threshold(params, spec.t, xs, rng);
    record.pk = key.keypair.pk;
    record.c = encrypt(record.pk, encode_message(params, encode_password(spec, password)),
                       rng);
    record.ys.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
      const Scalar mask = position_mask(f, record.v2, i + 1, password[i]);
      record.ys.push_back(sub(f, key.shares.shares[i].alpha, mask));
    }
    return record;
  }
  throw Error(Errc::kCollisionExhausted,
              "no collision-free mac key found; field too small");
}

}  // namespace

Scalar login_hash(const Field& f, std::string_view password) {
  return mac_to_scalar(f, public_hash_key(), "login-H", password);
}

Scalar cr_hash(const Field& f, std::string_view password) {
  return mac_to_scalar(f, public_hash_key(), "login-h", password);
}

RecoveryRecord hpr_register(const PasswordSpec& spec, const GroupParams& params,
                            std::string_view login, std::string_view password,
                            Rng& rng) {
  RecoveryRecord record = threshold_register(spec, params, login, password, rng);
  record.auth = HashAuth{login_hash(params.field(), password)};
  return record;
}

bool hpr_login(const RecoveryRecord& record, std::string_view login,
               std::string_view password) {
  if (record.login != login) throw Error(Errc::kUnknownLogin, "unknown login");
  const auto* auth = std::get_if<HashAuth>(&record.auth);
  if (auth == nullptr) {
    throw Error(Errc::kInvalidArgument, "account uses challenge-response login");
  }
  return login_hash(record.pk.params.field(), password) == auth->digest;
}

namespace {

// Re-randomized copy of c. a' = 1 would expose b' = m, so it is redrawn.
Ciphertext fresh_copy(const PublicKey& pk, const Ciphertext& c, Rng& rng) {
  const Field f = pk.params.field();
  for (;;) {
    Ciphertext out = rerandomize(pk, c, random_scalar(f, rng));
    if (out.a != identity()) return out;
  }
}

}  // namespace

RecoveryResponse hpr_server_respond(const RecoveryRecord& record,
                                    std::string_view guess, Rng& rng) {
  record.spec.check_password(guess);
  const GroupParams& gp = record.pk.params;
  const Field f = gp.field();

  RecoveryResponse resp;
  resp.v1 = record.v1;
  resp.pk = record.pk;
  resp.c_prime = fresh_copy(record.pk, record.c, rng);
  resp.partials.reserve(record.spec.n);
  for (std::size_t i = 0; i < record.spec.n; ++i) {
    const Scalar e = add(f, record.ys[i], position_mask(f, record.v2, i + 1, guess[i]));
    resp.partials.push_back(pow(gp, resp.c_prime.a, e));
  }
  return resp;
}

RecoverOutcome combine_partials(const PasswordSpec& spec, const MacKey& v1,
                                const PublicKey& pk, const Ciphertext& c_prime,
                                std::span<const GroupElement> partials,
                                std::string_view guess) {
  spec.check_password(guess);
  if (partials.size() != spec.n) {
    throw Error(Errc::kMalformed, "partial decryption count does not match n");
  }
  const GroupParams& gp = pk.params;
  const Field f = gp.field();
  std::vector<PartialDecryption> candidates;
  candidates.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    candidates.push_back({position_coordinate(f, v1, i + 1, guess[i]), partials[i]});
  }

  std::optional<std::string> found;
  auto accept = [&](const GroupElement& m) {
    auto candidate = decode_password(spec, decode_message(gp, m).value);
    if (!candidate || !match(*candidate, guess, spec.t)) return false;
    found = std::move(candidate);
    return true;
  };
  const CombineResult combined = combine(pk, c_prime, candidates, spec.t, accept);
  return RecoverOutcome{combined.plaintext ? found : std::nullopt,
                        combined.subsets_tried};
}

RecoverOutcome hpr_client_recover(const PasswordSpec& spec,
                                  const RecoveryResponse& response,
                                  std::string_view guess) {
  return combine_partials(spec, response.v1, response.pk, response.c_prime,
                          response.partials, guess);
}

SimpleRecord spr_simple_register(const PasswordSpec& spec,
                                 const GroupParams& params,
                                 std::string_view login,
                                 std::string_view password, Rng& rng) {
  const Field f = params.field();
  return SimpleRecord{std::string(login), HashAuth{login_hash(f, password)},
                      local_register(spec, f, password, rng), 0};
}

std::optional<std::string> spr_simple_recover(const SimpleRecord& record,
                                              std::string_view guess) {
  return local_recover(record.blob, guess).password;
}

ChalRespAuth cr_register(const GroupParams& params, std::string_view password) {
  return ChalRespAuth{generator(params), pow_g(params, cr_hash(params.field(), password))};
}

Challenge cr_challenge(const GroupParams& params, Rng& rng,
                       Clock::time_point expiry) {
  const Scalar c = random_nonzero_scalar(params.field(), rng);
  return Challenge{pow_g(params, c), c, expiry};
}

GroupElement cr_prove(const GroupParams& params, const GroupElement& b,
                      std::string_view password) {
  return pow(params, b, cr_hash(params.field(), password));
}

bool cr_verify(const GroupParams& params, const Challenge& challenge,
               const GroupElement& d, const GroupElement& proof) {
  return pow(params, d, challenge.c) == proof;
}

std::string ChallengeTable::issue(std::string login, Challenge challenge, Rng& rng) {
  std::lock_guard lock(mu_);
  std::string id = random_id(rng);
  live_.emplace(id, Entry{std::move(login), std::move(challenge)});
  return id;
}

ChallengeTable::Entry ChallengeTable::redeem(const std::string& id,
                                             Clock::time_point now) {
  std::lock_guard lock(mu_);
  auto it = live_.find(id);
  if (it == live_.end()) throw Error(Errc::kReplayed, "challenge unknown or already used");
  Entry entry = std::move(it->second);
  live_.erase(it);
  if (now >= entry.challenge.expiry) throw Error(Errc::kExpired, "challenge expired");
  return entry;
}

std::size_t ChallengeTable::outstanding() const {
  std::lock_guard lock(mu_);
  return live_.size();
}

RecoveryRecord crpr_register(const PasswordSpec& spec, const GroupParams& params,
                             std::string_view login, std::string_view password,
                             Rng& rng) {
  RecoveryRecord record = threshold_register(spec, params, login, password, rng);
  record.auth = cr_register(params, password);
  return record;
}

std::string ot_position_session(std::string_view session, std::size_t position) {
  return std::string(session) + "/" + std::to_string(position);
}

CrprServerSession::CrprServerSession(const RecoveryRecord& record,
                                     std::string session, Rng& rng)
    : record_(record), answered_(record.spec.n, false) {
  const Field f = record.pk.params.field();
  start_.session = std::move(session);
  start_.v1 = record.v1;
  start_.pk = record.pk;
  start_.c_prime = fresh_copy(record.pk, record.c, rng);
  start_.n = record.spec.n;
  start_.m = record.spec.alphabet_size();
}

OtResponse CrprServerSession::respond(std::size_t position, const GroupElement& b,
                                      Rng& rng) {
  const GroupParams& gp = record_.pk.params;
  if (position >= start_.n) throw Error(Errc::kInvalidArgument, "ot position out of range");
  if (answered_[position]) throw Error(Errc::kProtocol, "ot position already answered");
  if (!is_element(gp, b.value)) throw Error(Errc::kMalformed, "B is not a group element");
  answered_[position] = true;

  const Field f = gp.field();
  std::vector<GroupElement> table;
  table.reserve(start_.m);
  for (char c : record_.spec.alphabet) {
    const Scalar e = add(f, record_.ys[position],
                         position_mask(f, record_.v2, position + 1, c));
    table.push_back(pow(gp, start_.c_prime.a, e));
  }
  const GroupElement common = ot_common(gp, ot_position_session(start_.session, position));
  return ot_respond(gp, common, b, table, rng);
}

bool CrprServerSession::complete() const {
  return std::all_of(answered_.begin(), answered_.end(), [](bool a) { return a; });
}

CrprClientSession::CrprClientSession(PasswordSpec spec, std::string guess)
    : spec_(std::move(spec)), guess_(std::move(guess)) {
  spec_.check_password(guess_);
}

void CrprClientSession::begin(const CrRecoveryStart& start) {
  if (start.n != spec_.n || start.m != spec_.alphabet_size()) {
    throw Error(Errc::kMalformed, "server uses a different password shape");
  }
  start_ = start;
  states_.assign(spec_.n, std::nullopt);
  partials_.assign(spec_.n, std::nullopt);
}

GroupElement CrprClientSession::choose(std::size_t position, Rng& rng) {
  if (!start_) throw Error(Errc::kProtocol, "recovery not started");
  if (position >= spec_.n) throw Error(Errc::kInvalidArgument, "ot position out of range");
  const GroupParams& gp = start_->pk.params;
  const std::string session = ot_position_session(start_->session, position);
  OtChoice choice = ot_choose(gp, ot_common(gp, session), session,
                              *spec_.index_of(guess_[position]), spec_.alphabet_size(),
                              rng);
  states_[position] = std::move(choice.state);
  return choice.b;
}

void CrprClientSession::receive(std::size_t position, const OtResponse& response) {
  if (!start_ || position >= spec_.n || !states_[position]) {
    throw Error(Errc::kProtocol, "unexpected ot response");
  }
  partials_[position] = ot_recover(start_->pk.params, *states_[position], response);
}

RecoverOutcome CrprClientSession::finish() const {
  if (!start_) throw Error(Errc::kProtocol, "recovery not started");
  std::vector<GroupElement> partials;
  partials.reserve(spec_.n);
  for (const auto& p : partials_) {
    if (!p) throw Error(Errc::kProtocol, "missing ot response");
    partials.push_back(*p);
  }
  return combine_partials(spec_, start_->v1, start_->pk, start_->c_prime, partials,
                          guess_);
}

RecoverOutcome crpr_recover_in_process(const RecoveryRecord& record,
                                       std::string_view guess, Rng& rng,
                                       std::uint64_t* server_exponentiations) {
  CrprClientSession client(record.spec, std::string(guess));
  std::uint64_t server_work = 0;
  ExponentiationMeter meter;
  CrprServerSession server(record, random_id(rng), rng);
  server_work += meter.elapsed();
  client.begin(server.start());
  for (std::size_t i = 0; i < record.spec.n; ++i) {
    const GroupElement b = client.choose(i, rng);
    ExponentiationMeter respond_meter;
    OtResponse resp = server.respond(i, b, rng);
    server_work += respond_meter.elapsed();
    client.receive(i, resp);
  }
  if (server_exponentiations != nullptr) *server_exponentiations = server_work;
  return client.finish();
}

}  // namespace pwrec
