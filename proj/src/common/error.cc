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

#include "pfip/common/error.h"

#include <string>

namespace pfip {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kParamsMismatch: return "params mismatch";
    case ErrorCode::kLevelMismatch: return "level mismatch";
    case ErrorCode::kScaleMismatch: return "scale mismatch";
    case ErrorCode::kScaleNotNormalized: return "scale not normalized";
    case ErrorCode::kDepthExhausted: return "depth exhausted";
    case ErrorCode::kMissingKey: return "missing key material";
    case ErrorCode::kOverflow: return "overflow";
    case ErrorCode::kPrimeGeneration: return "prime generation failure";
    case ErrorCode::kNotTabulated: return "not tabulated";
    case ErrorCode::kBadMagic: return "bad magic";
    case ErrorCode::kBadVersion: return "bad version";
    case ErrorCode::kTruncated: return "truncated payload";
    case ErrorCode::kCorrupt: return "corrupt gallery";
    case ErrorCode::kDuplicateId: return "duplicate id";
    case ErrorCode::kUnknownId: return "unknown id";
    case ErrorCode::kPlacementMismatch: return "placement mismatch";
    case ErrorCode::kEmpty: return "empty";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kConfig: return "config error";
    case ErrorCode::kIo: return "io error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace pfip
