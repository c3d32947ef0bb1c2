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
#include "pwrec/ot.hpp"

#include "pwrec/error.hpp"

namespace pwrec {

GroupElement ot_common(const GroupParams& params, std::string_view session) {
  return hash_to_group(params, "ot-common|" + std::string(session));
}

OtChoice ot_choose(const GroupParams& params, const GroupElement& common,
                   std::string_view session, std::size_t choice,
                   std::size_t slot_count, Rng& rng) {
  return ot_choose(params, common, session, choice, slot_count,
                   random_scalar(params.field(), rng));
}

OtChoice ot_choose(const GroupParams& params, const GroupElement& common,
                   std::string_view session, std::size_t choice,
                   std::size_t slot_count, const Scalar& k) {
  if (choice >= slot_count) throw Error(Errc::kInvalidArgument, "ot choice out of range");
  // C^choice is built by multiplication so the receiver's cost does not
  // depend on its choice through the exponentiation counter.
  GroupElement shift = identity();
  for (std::size_t j = 0; j < choice; ++j) shift = mul(params, shift, common);
  OtChoice out;
  out.state = OtReceiverState{k, choice, slot_count, common, std::string(session)};
  out.b = mul(params, pow_g(params, k), shift);
  return out;
}

OtResponse ot_respond(const GroupParams& params, const GroupElement& common,
                      const GroupElement& b,
                      std::span<const GroupElement> payloads, Rng& rng) {
  const GroupElement common_inv = inv(params, common);
  OtResponse resp;
  resp.slots.reserve(payloads.size());
  GroupElement key = b;  // h_0 = B
  for (const auto& payload : payloads) {
    resp.slots.push_back(encrypt(PublicKey{params, key}, payload, rng));
    key = mul(params, key, common_inv);
  }
  return resp;
}

GroupElement ot_recover(const GroupParams& params, const OtReceiverState& state,
                        const OtResponse& response) {
  if (response.slots.size() != state.slot_count) {
    throw Error(Errc::kMalformed, "ot response has the wrong slot count");
  }
  return decrypt(params, state.k, response.slots[state.choice]);
}

}  // namespace pwrec
