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
#ifndef PWREC_CODEC_HPP_
#define PWREC_CODEC_HPP_

#include <string>
#include <variant>

#include "json.hpp"

#include "pwrec/local_recovery.hpp"
#include "pwrec/protocols.hpp"
#include "pwrec/substring.hpp"

namespace pwrec {

using Json = nlohmann::json;

// Everything the service persists under one login.
using AccountRecord = std::variant<RecoveryRecord, SimpleRecord, SubstringRecord>;

const std::string& account_login(const AccountRecord& record);
// "hpr", "crpr", "simple" or "substring".
std::string account_kind(const AccountRecord& record);

// JSON forms. Integers are lowercase big-endian hex strings; decoders throw
// Errc::kMalformed on missing fields, wrong types or values outside their
// group.
Json encode(const GroupParams& params);
Json encode(const PublicKey& pk);
Json encode(const Ciphertext& c);
Json encode(const PasswordSpec& spec);
Json encode(const Authenticator& auth);
Json encode(const RecoveryRecord& record);
Json encode(const SimpleRecord& record);
Json encode(const SubstringRecord& record);
Json encode(const AccountRecord& record);
Json encode(const LocalBlob& blob);
Json encode(const OtResponse& resp);
Json encode(const PaillierPublicKey& pk);

GroupParams decode_params(const Json& j);
PublicKey decode_public_key(const Json& j);
Ciphertext decode_ciphertext(const GroupParams& params, const Json& j);
PasswordSpec decode_spec(const Json& j);
Authenticator decode_auth(const GroupParams& params, const Json& j);
RecoveryRecord decode_recovery_record(const Json& j);
SimpleRecord decode_simple_record(const Json& j);
SubstringRecord decode_substring_record(const Json& j);
AccountRecord decode_account(const Json& j);
LocalBlob decode_local_blob(const Json& j);
OtResponse decode_ot_response(const GroupParams& params, const Json& j);
PaillierPublicKey decode_paillier_public_key(const Json& j);

// Field accessors for message handling.
const Json& require(const Json& j, const char* key);
std::string get_string(const Json& j, const char* key);
mpz_class get_int(const Json& j, const char* key);
std::size_t get_size(const Json& j, const char* key);
Scalar get_scalar(const Field& f, const Json& j, const char* key);
GroupElement get_element(const GroupParams& params, const Json& j, const char* key);
MacKey get_mac_key(const Json& j, const char* key);

}  // namespace pwrec

#endif  // PWREC_CODEC_HPP_
