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
#ifndef PWREC_OT_HPP_
#define PWREC_OT_HPP_

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pwrec/elgamal.hpp"

namespace pwrec {

// 1-out-of-m oblivious transfer of group elements.
//
// The receiver publishes B = g^k C^choice for a common element C whose
// discrete log nobody knows. The sender encrypts payload j under the key
// h_j = B C^{-j}; only h_choice = g^k has a secret key the receiver holds.

struct OtReceiverState {
  Scalar k;
  std::size_t choice = 0;
  std::size_t slot_count = 0;
  GroupElement common;
  std::string session;
};

struct OtResponse {
  std::vector<Ciphertext> slots;

  friend bool operator==(const OtResponse&, const OtResponse&) = default;
};

GroupElement ot_common(const GroupParams& params, std::string_view session);

struct OtChoice {
  OtReceiverState state;
  GroupElement b;
};

// Throws Errc::kInvalidArgument unless choice < slot_count.
OtChoice ot_choose(const GroupParams& params, const GroupElement& common,
                   std::string_view session, std::size_t choice,
                   std::size_t slot_count, Rng& rng);
// Same with a caller-supplied receiver secret.
OtChoice ot_choose(const GroupParams& params, const GroupElement& common,
                   std::string_view session, std::size_t choice,
                   std::size_t slot_count, const Scalar& k);

OtResponse ot_respond(const GroupParams& params, const GroupElement& common,
                      const GroupElement& b,
                      std::span<const GroupElement> payloads, Rng& rng);

// Throws Errc::kMalformed if the response has the wrong number of slots.
GroupElement ot_recover(const GroupParams& params, const OtReceiverState& state,
                        const OtResponse& response);

}  // namespace pwrec

#endif  // PWREC_OT_HPP_
