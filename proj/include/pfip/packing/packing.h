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

#ifndef PFIP_PACKING_PACKING_H_
#define PFIP_PACKING_PACKING_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "pfip/he/backend.h"

namespace pfip::packing {

// Unit-norm face embedding of dimension d.
struct FeatureVector {
  std::vector<double> values;
  size_t dim() const { return values.size(); }
};

// First m coordinates of a FeatureVector, not renormalized.
struct DecomposedFeature {
  std::vector<double> values;
  size_t dim() const { return values.size(); }
};

// Partition of S slots into S/m contiguous blocks of width m; block t covers
// slots [t*m, (t+1)*m).
class BlockLayout {
 public:
  // Throws kInvalidArgument unless m is a power of two dividing S.
  BlockLayout(size_t slots, size_t width);

  size_t slots() const { return slots_; }
  size_t width() const { return width_; }
  size_t capacity() const { return slots_ / width_; }

  bool operator==(const BlockLayout&) const = default;

 private:
  size_t slots_;
  size_t width_;
};

enum class ScoreKind { kDistance, kInner };

std::string_view ScoreKindName(ScoreKind kind);
ScoreKind ParseScoreKind(std::string_view name);

// Distance scores rank ascending, inner products descending.
inline bool Better(ScoreKind kind, double a, double b) {
  return kind == ScoreKind::kDistance ? a < b : a > b;
}

FeatureVector Normalize(std::span<const double> raw);
DecomposedFeature Decompose(const FeatureVector& f, size_t m);

// Tiles f_m across every block: out[t*m + i] = f_m[i].
he::SlotVector ReplicateProbe(const DecomposedFeature& f_m, const BlockLayout& layout);

// Zero vector with f_m in block k (k*m leading zeros, (capacity-k-1)*m
// trailing zeros).
he::SlotVector PadForEnroll(const DecomposedFeature& f_m, size_t k, const BlockLayout& layout);

// Rotate-and-sum over windows of m slots using steps 1, 2, ..., m/2:
// out[j] = sum_{r<m} in[(j + r) mod S]. Exactly log2(m) rotations and
// additions; levels and scale are left untouched.
he::CipherHandle RotateSum(const he::Evaluator& ev, const he::CipherHandle& c, size_t m);

// Packed per-block score between a replicated probe and one bin. Slot t*m
// of the result holds the squared distance (kDistance) or the inner product
// (kInner) for block t. One multiplication at the input level, with the
// rescale deferred until after the rotate-and-sum.
he::CipherHandle BlockScores(const he::Evaluator& ev, const he::CipherHandle& probe,
                             const he::CipherHandle& bin, const BlockLayout& layout,
                             ScoreKind kind);

// Reads slots {0, m, 2m, ...} for the first `occupancy` blocks.
std::vector<std::pair<size_t, double>> ExtractBlockScores(std::span<const double> decrypted,
                                                          const BlockLayout& layout,
                                                          size_t occupancy);

double SquaredDistance(std::span<const double> a, std::span<const double> b);
double InnerProduct(std::span<const double> a, std::span<const double> b);
double PlainScore(ScoreKind kind, std::span<const double> a, std::span<const double> b);

}  // namespace pfip::packing

#endif  // PFIP_PACKING_PACKING_H_
