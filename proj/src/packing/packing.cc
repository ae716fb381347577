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

#include "pfip/packing/packing.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "pfip/common/error.h"

namespace pfip::packing {

BlockLayout::BlockLayout(size_t slots, size_t width) : slots_(slots), width_(width) {
  Check(std::has_single_bit(width), ErrorCode::kInvalidArgument,
        "block width must be a power of two, got " + std::to_string(width));
  Check(width <= slots && slots % width == 0, ErrorCode::kInvalidArgument,
        "block width " + std::to_string(width) + " does not divide " + std::to_string(slots));
}

std::string_view ScoreKindName(ScoreKind kind) {
  return kind == ScoreKind::kDistance ? "distance" : "inner";
}

ScoreKind ParseScoreKind(std::string_view name) {
  if (name == "distance") return ScoreKind::kDistance;
  if (name == "inner") return ScoreKind::kInner;
  Fail(ErrorCode::kConfig, "unknown score kind '" + std::string(name) + "'");
}

FeatureVector Normalize(std::span<const double> raw) {
  double sum = 0;
  for (double x : raw) {
    Check(std::isfinite(x), ErrorCode::kInvalidArgument, "feature holds a non-finite value");
    sum += x * x;
  }
  Check(sum > 0, ErrorCode::kInvalidArgument, "cannot normalize a zero vector");
  const double norm = std::sqrt(sum);
  FeatureVector f;
  f.values.reserve(raw.size());
  for (double x : raw) f.values.push_back(x / norm);
  return f;
}

DecomposedFeature Decompose(const FeatureVector& f, size_t m) {
  Check(m >= 1 && m <= f.dim(), ErrorCode::kInvalidArgument,
        "m=" + std::to_string(m) + " exceeds d=" + std::to_string(f.dim()));
  Check(std::has_single_bit(m), ErrorCode::kInvalidArgument, "m must be a power of two");
  return DecomposedFeature{{f.values.begin(), f.values.begin() + static_cast<std::ptrdiff_t>(m)}};
}

he::SlotVector ReplicateProbe(const DecomposedFeature& f_m, const BlockLayout& layout) {
  Check(f_m.dim() == layout.width(), ErrorCode::kInvalidArgument,
        "probe dimension does not match block width");
  he::SlotVector out(layout.slots());
  for (size_t t = 0; t < layout.capacity(); ++t) {
    std::copy(f_m.values.begin(), f_m.values.end(),
              out.begin() + static_cast<std::ptrdiff_t>(t * layout.width()));
  }
  return out;
}

he::SlotVector PadForEnroll(const DecomposedFeature& f_m, size_t k, const BlockLayout& layout) {
  Check(f_m.dim() == layout.width(), ErrorCode::kInvalidArgument,
        "template dimension does not match block width");
  Check(k < layout.capacity(), ErrorCode::kInvalidArgument,
        "block index " + std::to_string(k) + " outside capacity " +
            std::to_string(layout.capacity()));
  he::SlotVector out(layout.slots(), 0.0);
  std::copy(f_m.values.begin(), f_m.values.end(),
            out.begin() + static_cast<std::ptrdiff_t>(k * layout.width()));
  return out;
}

he::CipherHandle RotateSum(const he::Evaluator& ev, const he::CipherHandle& c, size_t m) {
  Check(std::has_single_bit(m) && ev.params().slot_count() % m == 0,
        ErrorCode::kInvalidArgument, "window must be a power of two dividing S");
  he::CipherHandle acc = c;
  for (size_t step = 1; step < m; step <<= 1) {
    acc = ev.Add(acc, ev.Rotate(acc, static_cast<int>(step)));
  }
  return acc;
}

he::CipherHandle BlockScores(const he::Evaluator& ev, const he::CipherHandle& probe,
                             const he::CipherHandle& bin, const BlockLayout& layout,
                             ScoreKind kind) {
  Check(layout.slots() == ev.params().slot_count(), ErrorCode::kInvalidArgument,
        "layout slot count does not match parameters");
  he::CipherHandle product;
  if (kind == ScoreKind::kDistance) {
    const he::CipherHandle diff = ev.Sub(probe, bin);
    product = ev.MultiplyNoRescale(diff, diff);
  } else {
    product = ev.MultiplyNoRescale(probe, bin);
  }
  return ev.Rescale(RotateSum(ev, product, layout.width()));
}

std::vector<std::pair<size_t, double>> ExtractBlockScores(std::span<const double> decrypted,
                                                          const BlockLayout& layout,
                                                          size_t occupancy) {
  Check(decrypted.size() == layout.slots(), ErrorCode::kInvalidArgument,
        "decrypted vector length does not match layout");
  Check(occupancy <= layout.capacity(), ErrorCode::kInvalidArgument, "occupancy above capacity");
  std::vector<std::pair<size_t, double>> out;
  out.reserve(occupancy);
  for (size_t t = 0; t < occupancy; ++t) out.emplace_back(t, decrypted[t * layout.width()]);
  return out;
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  Check(a.size() == b.size(), ErrorCode::kInvalidArgument, "dimension mismatch");
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double InnerProduct(std::span<const double> a, std::span<const double> b) {
  Check(a.size() == b.size(), ErrorCode::kInvalidArgument, "dimension mismatch");
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double PlainScore(ScoreKind kind, std::span<const double> a, std::span<const double> b) {
  return kind == ScoreKind::kDistance ? SquaredDistance(a, b) : InnerProduct(a, b);
}

}  // namespace pfip::packing
