// Copyright 2026 The ENTRE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENTRE_ERROR_H_
#define ENTRE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace entre {

enum class ErrorCode {
  kFormat,         // malformed input file or record
  kValidation,     // instance invariant broken
  kConfiguration,  // bad lexicon, bad flag combination
  kEligibility,    // replacement requested on a non PERSON/ORGANIZATION role
  kSampling,       // lexicon pool exhausted
  kOracle,         // transport failure or wire protocol violation
  kPipeline,       // loop preconditions broken (missing prediction, ...)
  kReport,         // incompatible reports
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type. The code
// decides how the CLI maps the failure to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Oracle transport failures that may succeed on retry (connection refused,
// HTTP 5xx). Everything else from the oracle layer is fatal.
class TransientOracleError : public Error {
 public:
  explicit TransientOracleError(const std::string& message)
      : Error(ErrorCode::kOracle, message) {}
};

}  // namespace entre

#endif  // ENTRE_ERROR_H_
