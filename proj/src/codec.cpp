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
#include "pwrec/codec.hpp"

#include "pwrec/error.hpp"

namespace pwrec {
namespace {

Json hex_array(const std::vector<Scalar>& v) {
  Json arr = Json::array();
  for (const auto& s : v) arr.push_back(to_hex(s.value));
  return arr;
}

Json hex_array(const std::vector<mpz_class>& v) {
  Json arr = Json::array();
  for (const auto& s : v) arr.push_back(to_hex(s));
  return arr;
}

const Json& require_array(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_array()) throw Error(Errc::kMalformed, std::string("field is not an array: ") + key);
  return v;
}

std::vector<mpz_class> get_int_array(const Json& j, const char* key) {
  std::vector<mpz_class> out;
  for (const auto& item : require_array(j, key)) {
    if (!item.is_string()) throw Error(Errc::kMalformed, "expected hex string");
    out.push_back(mpz_from_hex(item.get<std::string>()));
  }
  return out;
}

std::vector<Scalar> get_scalar_array(const Field& f, const Json& j, const char* key) {
  std::vector<Scalar> out;
  for (auto& v : get_int_array(j, key)) {
    if (v >= f.q) throw Error(Errc::kMalformed, "scalar not reduced");
    out.push_back({std::move(v)});
  }
  return out;
}

std::uint64_t get_u64(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_unsigned()) throw Error(Errc::kMalformed, std::string("expected count: ") + key);
  return v.get<std::uint64_t>();
}

}  // namespace

const std::string& account_login(const AccountRecord& record) {
  return std::visit([](const auto& r) -> const std::string& { return r.login; }, record);
}

std::string account_kind(const AccountRecord& record) {
  if (const auto* r = std::get_if<RecoveryRecord>(&record)) {
    return std::holds_alternative<HashAuth>(r->auth) ? "hpr" : "crpr";
  }
  if (std::holds_alternative<SimpleRecord>(record)) return "simple";
  return "substring";
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object()) throw Error(Errc::kMalformed, "expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw Error(Errc::kMalformed, std::string("missing field: ") + key);
  return *it;
}

std::string get_string(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_string()) throw Error(Errc::kMalformed, std::string("field is not a string: ") + key);
  return v.get<std::string>();
}

mpz_class get_int(const Json& j, const char* key) { return mpz_from_hex(get_string(j, key)); }

std::size_t get_size(const Json& j, const char* key) {
  return static_cast<std::size_t>(get_u64(j, key));
}

Scalar get_scalar(const Field& f, const Json& j, const char* key) {
  mpz_class v = get_int(j, key);
  if (v >= f.q) throw Error(Errc::kMalformed, std::string("scalar not reduced: ") + key);
  return {std::move(v)};
}

GroupElement get_element(const GroupParams& params, const Json& j, const char* key) {
  return make_element(params, get_int(j, key));
}

MacKey get_mac_key(const Json& j, const char* key) {
  try {
    return MacKey(bytes_from_hex(get_string(j, key)));
  } catch (const Error& e) {
    throw Error(Errc::kMalformed, std::string("bad mac key: ") + key);
  }
}

Json encode(const GroupParams& params) {
  return {{"p", to_hex(params.p)}, {"q", to_hex(params.q)}, {"g", to_hex(params.g)}};
}

GroupParams decode_params(const Json& j) {
  GroupParams params{get_int(j, "p"), get_int(j, "q"), get_int(j, "g")};
  if (params.p != 2 * params.q + 1 || params.p < 5 || !is_element(params, params.g) ||
      params.g == 1) {
    throw Error(Errc::kMalformed, "group parameters are inconsistent");
  }
  return params;
}

Json encode(const PublicKey& pk) {
  Json j = encode(pk.params);
  j["h"] = to_hex(pk.h.value);
  return j;
}

PublicKey decode_public_key(const Json& j) {
  GroupParams params = decode_params(j);
  GroupElement h = get_element(params, j, "h");
  return PublicKey{std::move(params), std::move(h)};
}

Json encode(const Ciphertext& c) {
  return {{"a", to_hex(c.a.value)}, {"b", to_hex(c.b.value)}};
}

Ciphertext decode_ciphertext(const GroupParams& params, const Json& j) {
  return Ciphertext{get_element(params, j, "a"), get_element(params, j, "b")};
}

Json encode(const PasswordSpec& spec) {
  return {{"alphabet", spec.alphabet}, {"n", spec.n}, {"t", spec.t}};
}

PasswordSpec decode_spec(const Json& j) {
  PasswordSpec spec{get_string(j, "alphabet"), get_size(j, "n"), get_size(j, "t")};
  try {
    spec.validate();
  } catch (const Error& e) {
    throw Error(Errc::kMalformed, e.what());
  }
  return spec;
}

Json encode(const Authenticator& auth) {
  if (const auto* h = std::get_if<HashAuth>(&auth)) {
    return {{"kind", "hash"}, {"digest", to_hex(h->digest.value)}};
  }
  const auto& cr = std::get<ChalRespAuth>(auth);
  return {{"kind", "cr"}, {"g", to_hex(cr.g.value)}, {"d", to_hex(cr.d.value)}};
}

Authenticator decode_auth(const GroupParams& params, const Json& j) {
  const std::string kind = get_string(j, "kind");
  if (kind == "hash") return HashAuth{get_scalar(params.field(), j, "digest")};
  if (kind == "cr") {
    return ChalRespAuth{get_element(params, j, "g"), get_element(params, j, "d")};
  }
  throw Error(Errc::kMalformed, "unknown authenticator kind");
}

Json encode(const RecoveryRecord& r) {
  return {{"kind", std::holds_alternative<HashAuth>(r.auth) ? "hpr" : "crpr"},
          {"login", r.login},
          {"pk", encode(r.pk)},
          {"v1", bytes_to_hex(r.v1.bytes())},
          {"v2", bytes_to_hex(r.v2.bytes())},
          {"c", encode(r.c)},
          {"ys", hex_array(r.ys)},
          {"auth", encode(r.auth)},
          {"spec", encode(r.spec)},
          {"attempts", r.attempts}};
}

RecoveryRecord decode_recovery_record(const Json& j) {
  RecoveryRecord r;
  r.login = get_string(j, "login");
  r.pk = decode_public_key(require(j, "pk"));
  const GroupParams& gp = r.pk.params;
  r.v1 = get_mac_key(j, "v1");
  r.v2 = get_mac_key(j, "v2");
  r.c = decode_ciphertext(gp, require(j, "c"));
  r.ys = get_scalar_array(gp.field(), j, "ys");
  r.auth = decode_auth(gp, require(j, "auth"));
  r.spec = decode_spec(require(j, "spec"));
  r.attempts = j.contains("attempts") ? get_u64(j, "attempts") : 0;
  if (r.ys.size() != r.spec.n) throw Error(Errc::kMalformed, "ys count does not match n");
  try {
    r.spec.validate(gp.field());
  } catch (const Error& e) {
    throw Error(Errc::kMalformed, e.what());
  }
  if (j.contains("kind")) {
    const std::string kind = get_string(j, "kind");
    const bool hash = std::holds_alternative<HashAuth>(r.auth);
    if ((kind == "hpr") != hash || (kind != "hpr" && kind != "crpr")) {
      throw Error(Errc::kMalformed, "record kind does not match its authenticator");
    }
  }
  return r;
}

Json encode(const LocalBlob& blob) {
  return {{"format", "pwrec-local-blob"},
          {"version", LocalBlob::kVersion},
          {"v", bytes_to_hex(blob.v.bytes())},
          {"offsets", hex_array(blob.offsets)},
          {"spec", encode(blob.spec)},
          {"q", to_hex(blob.field.q)}};
}

LocalBlob decode_local_blob(const Json& j) {
  if (j.contains("format") && get_string(j, "format") != "pwrec-local-blob") {
    throw Error(Errc::kMalformed, "not a local recovery blob");
  }
  if (get_u64(j, "version") != LocalBlob::kVersion) {
    throw Error(Errc::kMalformed, "unsupported local blob version");
  }
  LocalBlob blob;
  blob.v = get_mac_key(j, "v");
  blob.field = Field{get_int(j, "q")};
  blob.offsets = get_scalar_array(blob.field, j, "offsets");
  blob.spec = decode_spec(require(j, "spec"));
  if (blob.offsets.size() != blob.spec.n) {
    throw Error(Errc::kMalformed, "offset count does not match n");
  }
  return blob;
}

Json encode(const SimpleRecord& r) {
  return {{"kind", "simple"},
          {"login", r.login},
          {"digest", to_hex(r.auth.digest.value)},
          {"blob", encode(r.blob)},
          {"attempts", r.attempts}};
}

SimpleRecord decode_simple_record(const Json& j) {
  SimpleRecord r;
  r.login = get_string(j, "login");
  r.blob = decode_local_blob(require(j, "blob"));
  r.auth = HashAuth{get_scalar(r.blob.field, j, "digest")};
  r.attempts = j.contains("attempts") ? get_u64(j, "attempts") : 0;
  return r;
}

Json encode(const SubstringRecord& r) {
  return {{"kind", "substring"},
          {"login", r.login},
          {"params", encode(r.params)},
          {"auth", encode(Authenticator{r.auth})},
          {"tags", hex_array(r.tags)},
          {"blobs", hex_array(r.blobs)},
          {"spec", encode(r.spec)},
          {"attempts", r.attempts}};
}

SubstringRecord decode_substring_record(const Json& j) {
  SubstringRecord r;
  r.login = get_string(j, "login");
  r.params = decode_params(require(j, "params"));
  auto auth = decode_auth(r.params, require(j, "auth"));
  if (!std::holds_alternative<ChalRespAuth>(auth)) {
    throw Error(Errc::kMalformed, "substring accounts use challenge-response login");
  }
  r.auth = std::get<ChalRespAuth>(auth);
  r.tags = get_int_array(j, "tags");
  r.blobs = get_int_array(j, "blobs");
  r.spec = decode_spec(require(j, "spec"));
  r.attempts = j.contains("attempts") ? get_u64(j, "attempts") : 0;
  if (r.tags.size() != window_count(r.spec) || r.blobs.size() != r.tags.size()) {
    throw Error(Errc::kMalformed, "window count does not match the spec");
  }
  const mpz_class limit = mpz_class(1) << (kMinPaillierBits - 1);
  for (const auto& b : r.blobs) {
    if (b >= limit) throw Error(Errc::kMalformed, "blob exceeds the minimum modulus");
  }
  return r;
}

Json encode(const AccountRecord& record) {
  return std::visit([](const auto& r) { return encode(r); }, record);
}

AccountRecord decode_account(const Json& j) {
  const std::string kind = get_string(j, "kind");
  if (kind == "hpr" || kind == "crpr") return decode_recovery_record(j);
  if (kind == "simple") return decode_simple_record(j);
  if (kind == "substring") return decode_substring_record(j);
  throw Error(Errc::kMalformed, "unknown record kind: " + kind);
}

Json encode(const OtResponse& resp) {
  Json slots = Json::array();
  for (const auto& c : resp.slots) slots.push_back(encode(c));
  return slots;
}

OtResponse decode_ot_response(const GroupParams& params, const Json& j) {
  if (!j.is_array()) throw Error(Errc::kMalformed, "slots must be an array");
  OtResponse resp;
  for (const auto& slot : j) resp.slots.push_back(decode_ciphertext(params, slot));
  return resp;
}

Json encode(const PaillierPublicKey& pk) { return {{"N", to_hex(pk.n)}}; }

PaillierPublicKey decode_paillier_public_key(const Json& j) {
  return paillier_public_key(get_int(j, "N"));
}

}  // namespace pwrec
