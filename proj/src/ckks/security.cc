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

#include "pfip/ckks/security.h"

#include <array>

#include "pfip/common/error.h"

namespace pfip::ckks {
namespace {

constexpr std::array<SecurityRow, 6> kTable = {{
    {8192, 128, 218},
    {8192, 192, 152},
    {8192, 256, 118},
    {32768, 128, 881},
    {32768, 192, 611},
    {32768, 256, 476},
}};

}  // namespace

std::span<const SecurityRow> SecurityTable() { return kTable; }

int MaxModulusBits(uint64_t poly_degree, int security_level) {
  for (const auto& row : kTable) {
    if (row.poly_degree == poly_degree && row.security_level == security_level) {
      return row.max_logq;
    }
  }
  Fail(ErrorCode::kNotTabulated, "no entry for degree " + std::to_string(poly_degree) +
                                     " at " + std::to_string(security_level) + " bits");
}

SecurityReport CheckSecurity(const he::BackendParams& params) {
  SecurityReport report;
  report.logq = params.logq();
  bool tabulated = false;
  for (const auto& row : kTable) tabulated |= row.poly_degree == params.poly_degree;
  if (params.toy || !tabulated) {
    report.summary = "toy parameters (degree " + std::to_string(params.poly_degree) +
                     ", logq " + std::to_string(report.logq) + "): no security claim";
    return report;
  }
  for (const auto& row : kTable) {
    if (row.poly_degree != params.poly_degree || row.max_logq < report.logq) continue;
    if (!report.achieved_level || row.security_level > *report.achieved_level) {
      report.achieved_level = row.security_level;
      report.bound = row.max_logq;
    }
  }
  if (!report.achieved_level) {
    report.summary = "logq " + std::to_string(report.logq) +
                     " exceeds every tabulated bound for degree " +
                     std::to_string(params.poly_degree) + ": below 128-bit security";
    return report;
  }
  report.claim = true;
  report.summary = "degree " + std::to_string(params.poly_degree) + ": logq=" +
                   std::to_string(report.logq) + " <= " + std::to_string(report.bound) +
                   " => security level >= " + std::to_string(*report.achieved_level) + " bits";
  return report;
}

}  // namespace pfip::ckks
