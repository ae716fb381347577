// Copyright 2026 The pfip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PFIP_COMMON_ERROR_H_
#define PFIP_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pfip {

enum class ErrorCode {
  kInvalidArgument,
  kParamsMismatch,
  kLevelMismatch,
  kScaleMismatch,
  kScaleNotNormalized,
  kDepthExhausted,
  kMissingKey,
  kOverflow,
  kPrimeGeneration,
  kNotTabulated,
  kBadMagic,
  kBadVersion,
  kTruncated,
  kCorrupt,
  kDuplicateId,
  kUnknownId,
  kPlacementMismatch,
  kEmpty,
  kParse,
  kConfig,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure in the library is reported as an Error carrying a code that
// tests and the CLI can dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

inline void Check(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) Fail(code, message);
}

}  // namespace pfip

#endif  // PFIP_COMMON_ERROR_H_
