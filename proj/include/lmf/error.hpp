// Copyright 2026 The landmark-frames Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LMF_ERROR_HPP_
#define LMF_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace lmf {

enum class ErrorCode {
  kParseError,
  kMalformedAlignment,
  kFormatError,
  kUnknownPhone,
  kEmptyInput,
  kInvalidPattern,
  kShapeError,
  kBeamCollapse,
  kUnknownSenone,
  kDegenerateBaseline,
  kDegenerateTest,
  kInvalidConfig,
  kIOError,
};

std::string_view to_string(ErrorCode code);

/// All library failures are reported through this exception; `code()` names
/// the failure class so callers (and the CLI exit-code mapping) can branch.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace lmf

#endif  // LMF_ERROR_HPP_
