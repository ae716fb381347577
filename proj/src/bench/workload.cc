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

#include "pfip/bench/workload.h"

#include <cmath>
#include <cstdio>
#include <vector>

#include "json.hpp"
#include "pfip/common/error.h"

namespace pfip::bench {
namespace {

constexpr ReferenceWorkloadRow kRows[] = {
    {"InsightFace", 512, 256, 0.02, 1.625}, {"InsightFace", 512, 128, 0.05, 0.938},
    {"InsightFace", 512, 64, 0.25, 1.171},  {"InsightFace", 512, 32, 0.53, 1.852},
    {"FaceNet", 128, 64, 0.02, 0.406},      {"FaceNet", 128, 32, 0.25, 0.391},
    {"FaceNet", 128, 16, 0.50, 0.512},
};

constexpr ReferenceBaselineRow kBaselines[] = {{128, 0.781}, {512, 3.125}};

constexpr double kThreeDecimals = 1e-3;

}  // namespace

WorkloadReport WorkloadReduction(size_t m, double p, size_t d, size_t S) {
  Check(m >= 1 && m <= d && d <= S, ErrorCode::kInvalidArgument, "need 1 <= m <= d <= S");
  Check(p > 0 && p <= 1, ErrorCode::kInvalidArgument, "penetration must lie in (0, 1]");
  WorkloadReport r;
  r.m = m;
  r.p = p;
  r.d = d;
  r.S = S;
  const double md = static_cast<double>(m), dd = static_cast<double>(d), sd = static_cast<double>(S);
  r.remaining_fraction = (md + p * dd) / sd;
  r.baseline_fraction = dd / sd;
  r.printed_formula = (md + p * dd) * sd / (dd * dd);
  return r;
}

std::span<const ReferenceWorkloadRow> ReferenceWorkloadRows() { return kRows; }
std::span<const ReferenceBaselineRow> ReferenceBaselineRows() { return kBaselines; }

std::vector<WorkloadComparison> CompareWorkloadTable(size_t S) {
  std::vector<WorkloadComparison> out;
  for (const auto& row : kRows) {
    WorkloadComparison c;
    c.row = row;
    c.report = WorkloadReduction(row.m, row.p, row.d, S);
    c.computed_percent = 100.0 * c.report.remaining_fraction;
    c.diff_pp = c.computed_percent - row.published_percent;
    c.matches = std::abs(c.diff_pp) < kThreeDecimals;
    c.flagged = !c.matches;
    if (c.flagged) {
      // Which penetration would reproduce the published figure?
      const double p_implied = (row.published_percent / 100.0 * static_cast<double>(S) -
                                static_cast<double>(row.m)) /
                               static_cast<double>(row.d);
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "published %.3f%% does not follow from p=%.2f; it corresponds to p=%.3f",
                    row.published_percent, row.p, p_implied);
      c.note = buf;
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string WorkloadJson(std::span<const WorkloadComparison> rows, size_t S) {
  nlohmann::ordered_json j;
  j["S"] = S;
  auto& arr = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& c : rows) {
    nlohmann::ordered_json r;
    r["model"] = c.row.model;
    r["d"] = c.row.d;
    r["m"] = c.row.m;
    r["p"] = c.row.p;
    r["remaining_percent"] = c.computed_percent;
    r["published_percent"] = c.row.published_percent;
    r["diff_pp"] = c.diff_pp;
    r["printed_formula"] = c.report.printed_formula;
    r["matches"] = c.matches;
    r["flagged"] = c.flagged;
    if (!c.note.empty()) r["note"] = c.note;
    arr.push_back(std::move(r));
  }
  auto& base = j["baselines"] = nlohmann::ordered_json::array();
  for (const auto& b : kBaselines) {
    const double pct = 100.0 * static_cast<double>(b.d) / static_cast<double>(S);
    base.push_back({{"d", b.d}, {"baseline_percent", pct}, {"published_percent", b.published_percent}});
  }
  // The d=128, m=64 configuration also appears with 0.398 % in a
  // comparison table, against 0.406 % above.
  j["notes"] = {"d=128 m=64 p=0.02 is also published as 0.398%; computed value is 0.406%"};
  return j.dump(2);
}

std::string WorkloadText(std::span<const WorkloadComparison> rows, size_t S) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-12s %4s %4s %5s %10s %10s %9s %12s\n", "model", "d", "m", "p",
                "computed%", "published%", "diff(pp)", "printed-eq");
  out += buf;
  for (const auto& c : rows) {
    std::snprintf(buf, sizeof buf, "%-12s %4zu %4zu %5.2f %10.4f %10.3f %+9.4f %12.4f%s\n",
                  c.row.model, c.row.d, c.row.m, c.row.p, c.computed_percent,
                  c.row.published_percent, c.diff_pp, c.report.printed_formula,
                  c.flagged ? "  [flagged]" : "");
    out += buf;
  }
  for (const auto& b : kBaselines) {
    std::snprintf(buf, sizeof buf, "baseline d=%zu: %.4f%% (published %.3f%%)\n", b.d,
                  100.0 * static_cast<double>(b.d) / static_cast<double>(S), b.published_percent);
    out += buf;
  }
  for (const auto& c : rows) {
    if (!c.note.empty()) out += "note: " + c.note + "\n";
  }
  return out;
}

}  // namespace pfip::bench
