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
#include "pwrec/error.hpp"

namespace pwrec {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kDegenerateInput: return "DegenerateInput";
    case Errc::kDuplicateCoordinate: return "DuplicateCoordinate";
    case Errc::kCollisionExhausted: return "CollisionExhausted";
    case Errc::kMalformed: return "Malformed";
    case Errc::kUnknownLogin: return "UnknownLogin";
    case Errc::kDuplicateLogin: return "DuplicateLogin";
    case Errc::kLocked: return "Locked";
    case Errc::kExpired: return "Expired";
    case Errc::kReplayed: return "Replayed";
    case Errc::kIo: return "Io";
    case Errc::kProtocol: return "ProtocolError";
  }
  return "Unknown";
}

}  // namespace pwrec
