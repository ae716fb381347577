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

#ifndef PFIP_BENCH_HIT_RATE_H_
#define PFIP_BENCH_HIT_RATE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "pfip/bench/dataset.h"
#include "pfip/packing/packing.h"

namespace pfip::bench {

struct HitRateRow {
  size_t m = 0;
  double penetration = 0;
  double hit_rate = 0;
};

// 0.005 steps up to 0.1, then 0.01 steps up to 1.0.
std::vector<double> PenetrationGrid();

// 1-based rank of each probe's true subject among the enrolled subjects,
// scoring the first m coordinates in plaintext. Ties are broken by ascending
// subject id, as in the encrypted candidate queue.
std::vector<size_t> TrueSubjectRanks(const Dataset& ds, size_t m,
                                     packing::ScoreKind kind = packing::ScoreKind::kDistance);

// A probe hits at p iff its true subject's rank is <= ceil(p * n).
std::vector<HitRateRow> HitRateCurve(const Dataset& ds, size_t m, std::span<const double> grid,
                                     packing::ScoreKind kind = packing::ScoreKind::kDistance);

// Smallest grid value reaching `target` hit rate.
double MinPenetration(const Dataset& ds, size_t m, double target,
                      std::span<const double> grid = {},
                      packing::ScoreKind kind = packing::ScoreKind::kDistance);

}  // namespace pfip::bench

#endif  // PFIP_BENCH_HIT_RATE_H_
