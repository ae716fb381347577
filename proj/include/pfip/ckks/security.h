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

#ifndef PFIP_CKKS_SECURITY_H_
#define PFIP_CKKS_SECURITY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "pfip/he/params.h"

namespace pfip::ckks {

struct SecurityRow {
  uint64_t poly_degree;
  int security_level;
  int max_logq;
};

// Largest total modulus size admitted at each (degree, security level).
std::span<const SecurityRow> SecurityTable();

// Throws kNotTabulated for pairs outside the table.
int MaxModulusBits(uint64_t poly_degree, int security_level);

struct SecurityReport {
  bool claim = false;            // false for toy parameters or untabulated degrees
  int logq = 0;                  // sum of configured modulus bits
  int bound = 0;                 // table bound at the achieved level
  std::optional<int> achieved_level;
  std::string summary;
};

SecurityReport CheckSecurity(const he::BackendParams& params);

}  // namespace pfip::ckks

#endif  // PFIP_CKKS_SECURITY_H_
