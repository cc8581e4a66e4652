// Copyright 2026 The PDPC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// -----------------------------------------------------------------------------
//
//  Error type thrown by the core library. The C API maps ErrorCode values
//  one-to-one onto pdpc_status.
//

#ifndef PDPC_SRC_STATUS_H_
#define PDPC_SRC_STATUS_H_

#include <stdexcept>
#include <string>

namespace pdpc {

enum class ErrorCode {
  kInvalidArgument = 1,
  kOutOfBounds = 2,
  kIo = 3,
  kFormat = 4,
  kConditioning = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void Check(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) Fail(code, what);
}

}  // namespace pdpc

#endif  // PDPC_SRC_STATUS_H_
