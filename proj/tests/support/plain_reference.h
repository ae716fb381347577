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

#ifndef PFIP_TESTS_SUPPORT_PLAIN_REFERENCE_H_
#define PFIP_TESTS_SUPPORT_PLAIN_REFERENCE_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pfip/gallery/gallery.h"
#include "pfip/packing/packing.h"
#include "pfip/protocol/roles.h"

namespace pfip::testing {

using protocol::Decision;
using protocol::DecideFromDistances;

// Plaintext reference for the whole identification pipeline.
struct PlainGallery {
  size_t m;
  std::vector<std::pair<std::string, std::vector<double>>> entries;  // normalized

  void Add(const std::string& id, std::span<const double> raw) {
    entries.emplace_back(id, packing::Normalize(raw).values);
  }

  std::vector<std::pair<std::string, double>> Decomposed(const std::vector<double>& f) const {
    auto fm = packing::Decompose(packing::FeatureVector{f}, m).values;
    std::vector<std::pair<std::string, double>> out;
    for (const auto& [id, e] : entries) {
      auto em = packing::Decompose(packing::FeatureVector{e}, m).values;
      out.emplace_back(id, packing::SquaredDistance(em, fm));
    }
    return out;
  }

  std::vector<std::pair<std::string, double>> Full(const std::vector<double>& f,
                                                   std::span<const std::string> ids) const {
    std::vector<std::pair<std::string, double>> out;
    for (const auto& [id, e] : entries) {
      if (std::find(ids.begin(), ids.end(), id) != ids.end()) {
        out.emplace_back(id, packing::SquaredDistance(e, f));
      }
    }
    return out;
  }

  std::vector<std::string> Queue(const std::vector<double>& f, double p) const {
    return gallery::CandidateQueue(Decomposed(f), p, entries.size(), packing::ScoreKind::kDistance);
  }

  Decision Identify(std::span<const double> raw, double p, double tau) const {
    auto f = packing::Normalize(raw).values;
    auto q = Queue(f, p);
    return DecideFromDistances(Full(f, q), tau);
  }

  Decision Exhaustive(std::span<const double> raw, double tau) const {
    auto f = packing::Normalize(raw).values;
    std::vector<std::string> all;
    for (const auto& e : entries) all.push_back(e.first);
    return DecideFromDistances(Full(f, all), tau);
  }

  // Smallest gap that a 1e-4 perturbation of scores could flip.
  double Margin(std::span<const double> raw, double p, double tau) const {
    auto f = packing::Normalize(raw).values;
    auto dec = Decomposed(f);
    std::vector<double> ds;
    for (const auto& x : dec) ds.push_back(x.second);
    std::sort(ds.begin(), ds.end());
    const size_t q = gallery::QueueSize(p, entries.size());
    double margin = std::numeric_limits<double>::infinity();
    if (q < ds.size()) margin = ds[q] - ds[q - 1];
    auto full = Full(f, Queue(f, p));
    std::vector<double> fs;
    for (const auto& x : full) fs.push_back(x.second);
    std::sort(fs.begin(), fs.end());
    if (fs.size() > 1) margin = std::min(margin, fs[1] - fs[0]);
    if (!fs.empty()) margin = std::min(margin, std::abs(fs[0] - tau));
    return margin;
  }
};

}  // namespace pfip::testing

#endif  // PFIP_TESTS_SUPPORT_PLAIN_REFERENCE_H_
