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
#include "pwrec/client.hpp"

#include "pwrec/error.hpp"
#include "pwrec/substring.hpp"

namespace pwrec {

Client::Client(const std::string& host, std::uint16_t port, std::optional<Bytes> psk)
    : sock_(connect_tcp(host, port)), psk_(std::move(psk)) {}

Json Client::call(const Json& request) {
  if (transcript_) transcript_(Direction::kSent, request);
  write_frame(sock_, request, psk_);
  auto resp = read_frame(sock_, psk_);
  if (!resp) throw Error(Errc::kIo, "server closed the connection");
  if (transcript_) transcript_(Direction::kReceived, *resp);
  return *resp;
}

Json Client::expect(const Json& request, const char* type) {
  Json resp = call(request);
  const std::string got = resp.value("type", "");
  if (got == "Error") {
    throw Error(errc_from_name(resp.value("code", "ProtocolError")),
                resp.value("message", "server error"));
  }
  if (got != type) throw Error(Errc::kProtocol, "unexpected reply " + got);
  return resp;
}

const GroupParams& Client::params() {
  if (!params_) params_ = decode_params(expect({{"type", "GetParams"}}, "Params"));
  return *params_;
}

void Client::send_register(const std::string& kind, const Json& record) {
  expect({{"type", "Register"}, {"kind", kind}, {"record", record}}, "Registered");
}

void Client::register_hash(const PasswordSpec& spec, const std::string& login,
                           const std::string& password) {
  send_register("hpr", encode(hpr_register(spec, params(), login, password, rng_)));
}

void Client::register_cr(const PasswordSpec& spec, const std::string& login,
                         const std::string& password) {
  send_register("crpr", encode(crpr_register(spec, params(), login, password, rng_)));
}

void Client::register_substring(const PasswordSpec& spec, const std::string& login,
                                const std::string& password) {
  send_register("substring", encode(spr_register(spec, params(), login, password)));
}

void Client::register_simple(const PasswordSpec& spec, const std::string& login,
                             const std::string& password) {
  expect({{"type", "Register"},
          {"kind", "simple"},
          {"login", login},
          {"password", password},
          {"spec", encode(spec)}},
         "Registered");
}

bool Client::login_hash(const std::string& login, const std::string& password) {
  return expect({{"type", "LoginHash"}, {"login", login}, {"password", password}},
                "LoginResult")
      .at("accepted")
      .get<bool>();
}

bool Client::login_cr(const std::string& login, const std::string& password) {
  const GroupParams& gp = params();
  Json ch = expect({{"type", "LoginCrStart"}, {"login", login}}, "Challenge");
  const GroupElement b = get_element(gp, ch, "b");
  const GroupElement proof = cr_prove(gp, b, password);
  return expect({{"type", "LoginCrProof"},
                 {"id", get_string(ch, "id")},
                 {"proof", to_hex(proof.value)}},
                "LoginResult")
      .at("accepted")
      .get<bool>();
}

RecoverOutcome Client::recover_hash(const PasswordSpec& spec, const std::string& login,
                                    const std::string& guess) {
  Json r = expect({{"type", "RecoverHashRequest"}, {"login", login}, {"guess", guess}},
                  "RecoverHashResponse");
  RecoveryResponse resp{get_mac_key(r, "v1"), decode_public_key(require(r, "pk")), {}, {}};
  const GroupParams& gp = resp.pk.params;
  resp.c_prime = decode_ciphertext(gp, require(r, "c"));
  const Json& partials = require(r, "partials");
  if (!partials.is_array()) throw Error(Errc::kMalformed, "partials must be an array");
  for (std::size_t i = 0; i < partials.size(); ++i) {
    if (!partials[i].is_string()) throw Error(Errc::kMalformed, "partial must be hex");
    const mpz_class d = mpz_from_hex(partials[i].get<std::string>());
    resp.partials.push_back(make_element(gp, d));
  }
  return hpr_client_recover(spec, resp, guess);
}

RecoverOutcome Client::recover_cr(const PasswordSpec& spec, const std::string& login,
                                  const std::string& guess) {
  Json r = expect({{"type", "RecoverCrStart"}, {"login", login}}, "RecoverCrStarted");
  CrRecoveryStart start;
  start.session = get_string(r, "session");
  start.v1 = get_mac_key(r, "v1");
  start.pk = decode_public_key(require(r, "pk"));
  start.c_prime = decode_ciphertext(start.pk.params, require(r, "c"));
  start.n = get_size(r, "n");
  start.m = get_size(r, "m");

  CrprClientSession client(spec, guess);
  client.begin(start);
  for (std::size_t i = 0; i < start.n; ++i) {
    const GroupElement b = client.choose(i, rng_);
    Json o = expect({{"type", "RecoverCrOtChoose"},
                     {"session", start.session},
                     {"index", i},
                     {"B", to_hex(b.value)}},
                    "RecoverCrOtRespond");
    if (get_size(o, "index") != i) throw Error(Errc::kProtocol, "OT reply out of order");
    client.receive(i, decode_ot_response(start.pk.params, require(o, "slots")));
  }
  return client.finish();
}

std::optional<std::string> Client::recover_simple(const std::string& login,
                                                  const std::string& guess) {
  Json r = expect({{"type", "RecoverSimpleRequest"}, {"login", login}, {"guess", guess}},
                  "RecoverSimpleResponse");
  if (!r.value("recovered", false)) return std::nullopt;
  return get_string(r, "password");
}

std::optional<std::string> Client::recover_substring(const PasswordSpec& spec,
                                                     const std::string& login,
                                                     const std::string& guess) {
  const SubstringSession session = spr_client_request(spec, guess, rng_, paillier_bits_);
  Json cts = Json::array();
  for (const auto& c : session.request.ciphertexts) cts.push_back(to_hex(c));
  Json r = expect({{"type", "SprRequest"},
                   {"login", login},
                   {"N", to_hex(session.keys.pk.n)},
                   {"ciphertexts", cts}},
                  "SprRespond");
  const Json& out = require(r, "ciphertexts");
  if (!out.is_array()) throw Error(Errc::kMalformed, "ciphertexts must be an array");
  std::vector<mpz_class> responses;
  for (const auto& c : out) {
    if (!c.is_string()) throw Error(Errc::kMalformed, "ciphertext must be hex");
    responses.push_back(mpz_from_hex(c.get<std::string>()));
  }
  return spr_client_finish(spec, session.keys, responses, guess);
}

}  // namespace pwrec
