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
#ifndef PWREC_ERROR_HPP_
#define PWREC_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace pwrec {

enum class Errc {
  kInvalidArgument = 1,
  kDegenerateInput,
  kDuplicateCoordinate,
  kCollisionExhausted,
  kMalformed,
  kUnknownLogin,
  kDuplicateLogin,
  kLocked,
  kExpired,
  kReplayed,
  kIo,
  kProtocol,
};

const char* errc_name(Errc code);

// Every failure raised by the library carries one of the codes above so the
// C layer and the wire protocol can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace pwrec

#endif  // PWREC_ERROR_HPP_
