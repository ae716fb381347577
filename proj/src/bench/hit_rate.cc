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

#include "pfip/bench/hit_rate.h"

#include <map>

#include "pfip/common/error.h"
#include "pfip/gallery/gallery.h"

namespace pfip::bench {

std::vector<double> PenetrationGrid() {
  std::vector<double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(i * 0.005);
  for (int i = 11; i <= 100; ++i) grid.push_back(i / 100.0);
  return grid;
}

std::vector<size_t> TrueSubjectRanks(const Dataset& ds, size_t m, packing::ScoreKind kind) {
  Check(!ds.enrolled.empty() && !ds.probes.empty(), ErrorCode::kEmpty, "dataset is empty");
  Check(m >= 1 && m <= ds.d, ErrorCode::kInvalidArgument, "m must lie in [1, d]");
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < ds.enrolled.size(); ++i) index.emplace(ds.enrolled[i].subject, i);

  std::vector<std::vector<double>> gallery;
  gallery.reserve(ds.enrolled.size());
  for (const auto& s : ds.enrolled) gallery.push_back(packing::Decompose(s.feature, m).values);

  std::vector<size_t> ranks;
  ranks.reserve(ds.probes.size());
  std::vector<double> scores(gallery.size());
  for (const auto& probe : ds.probes) {
    auto it = index.find(probe.subject);
    Check(it != index.end(), ErrorCode::kInvalidArgument,
          "probe subject '" + probe.subject + "' is not enrolled");
    const auto pm = packing::Decompose(probe.feature, m).values;
    for (size_t i = 0; i < gallery.size(); ++i) scores[i] = packing::PlainScore(kind, pm, gallery[i]);
    const size_t t = it->second;
    const auto& tid = ds.enrolled[t].subject;
    size_t rank = 1;
    for (size_t i = 0; i < gallery.size(); ++i) {
      if (i == t) continue;
      if (packing::Better(kind, scores[i], scores[t]) ||
          (scores[i] == scores[t] && ds.enrolled[i].subject < tid)) {
        ++rank;
      }
    }
    ranks.push_back(rank);
  }
  return ranks;
}

std::vector<HitRateRow> HitRateCurve(const Dataset& ds, size_t m, std::span<const double> grid,
                                     packing::ScoreKind kind) {
  const auto ranks = TrueSubjectRanks(ds, m, kind);
  const size_t n = ds.enrolled.size();
  std::vector<HitRateRow> rows;
  rows.reserve(grid.size());
  for (double p : grid) {
    const size_t q = gallery::QueueSize(p, n);
    size_t hits = 0;
    for (size_t r : ranks) hits += r <= q ? 1 : 0;
    rows.push_back({m, p, static_cast<double>(hits) / static_cast<double>(ranks.size())});
  }
  return rows;
}

double MinPenetration(const Dataset& ds, size_t m, double target, std::span<const double> grid,
                      packing::ScoreKind kind) {
  Check(target > 0 && target <= 1, ErrorCode::kInvalidArgument, "target must lie in (0, 1]");
  std::vector<double> fallback;
  if (grid.empty()) {
    fallback = PenetrationGrid();
    grid = fallback;
  }
  for (const auto& row : HitRateCurve(ds, m, grid, kind)) {
    if (row.hit_rate >= target) return row.penetration;
  }
  // The grid always ends at 1.0, where every probe hits.
  Fail(ErrorCode::kInvalidArgument, "target hit rate unreachable on this grid");
}

}  // namespace pfip::bench
