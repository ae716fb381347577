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

#ifndef PFIP_BENCH_TIMING_H_
#define PFIP_BENCH_TIMING_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pfip/gallery/gallery.h"
#include "pfip/he/backend.h"

namespace pfip::bench {

struct TimingConfig {
  gallery::GalleryConfig gallery;
  size_t n = 1000;
  size_t probes = 3;
  he::BackendKind backend = he::BackendKind::kCkks;
  size_t threads = 1;
  uint64_t seed = 1;
  double sigma = 0.03;
  // Gallery sizes for the extrapolated trend.
  std::vector<size_t> trend_n = {1000, 3000, 5000};
};

struct StageTiming {
  std::string name;
  double mean_seconds = 0;
  he::OpCounts ops;  // per identify
};

struct TrendPoint {
  size_t n = 0;
  size_t bins = 0;
  size_t queue = 0;
  double preselect_seconds = 0;
  double fine_seconds = 0;
};

struct TimingReport {
  TimingConfig config;
  double enroll_seconds = 0;
  size_t bins = 0;
  size_t queue = 0;
  size_t matched = 0;
  size_t correct = 0;
  double identify_mean_seconds = 0;
  std::vector<StageTiming> stages;
  std::vector<TrendPoint> trend;

  const StageTiming* stage(std::string_view name) const;
  std::string ToJson() const;
  std::string ToText() const;
};

// Builds a synthetic gallery of n subjects, enrolls it through the protocol
// roles, and times `probes` identifications of mated probes.
TimingReport BenchTiming(const TimingConfig& config);

// Published single-thread latency for a 1000-template retrieval, reported
// alongside measurements and never asserted.
inline constexpr double kReferenceLatencySeconds = 0.3;

}  // namespace pfip::bench

#endif  // PFIP_BENCH_TIMING_H_
