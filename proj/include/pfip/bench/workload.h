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

#ifndef PFIP_BENCH_WORKLOAD_H_
#define PFIP_BENCH_WORKLOAD_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pfip::bench {

struct WorkloadReport {
  size_t m = 0;
  double p = 0;
  size_t d = 0;
  size_t S = 0;
  // (m + p*d) / S: packed preselection plus fine matching, relative to the
  // n*d slot products of a plain exhaustive search.
  double remaining_fraction = 0;
  // d / S: exhaustive packed search.
  double baseline_fraction = 0;
  // (m + p*d) * S / d^2, the closed form as commonly printed. Kept for
  // comparison only; it is not a fraction.
  double printed_formula = 0;
};

WorkloadReport WorkloadReduction(size_t m, double p, size_t d, size_t S = 16384);

// Published workload-reduction figures for two embedding models
// (d=512 and d=128) at the penetration rates used in their evaluation.
struct ReferenceWorkloadRow {
  const char* model;
  size_t d;
  size_t m;
  double p;
  double published_percent;
};

std::span<const ReferenceWorkloadRow> ReferenceWorkloadRows();

struct WorkloadComparison {
  ReferenceWorkloadRow row;
  WorkloadReport report;
  double computed_percent = 0;
  double diff_pp = 0;
  // |diff| < 0.001 pp, i.e. agreement to three decimals of a percent.
  bool matches = false;
  // Disagreement beyond three decimals; `note` explains it.
  bool flagged = false;
  std::string note;
};

std::vector<WorkloadComparison> CompareWorkloadTable(size_t S = 16384);

// Published exhaustive-search baselines: d=128 -> 0.781 %, d=512 -> 3.125 %.
struct ReferenceBaselineRow {
  size_t d;
  double published_percent;
};

std::span<const ReferenceBaselineRow> ReferenceBaselineRows();

std::string WorkloadJson(std::span<const WorkloadComparison> rows, size_t S = 16384);
std::string WorkloadText(std::span<const WorkloadComparison> rows, size_t S = 16384);

}  // namespace pfip::bench

#endif  // PFIP_BENCH_WORKLOAD_H_
