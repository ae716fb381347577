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

#ifndef PFIP_GALLERY_GALLERY_H_
#define PFIP_GALLERY_GALLERY_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfip/he/backend.h"
#include "pfip/packing/packing.h"

namespace pfip::gallery {

using TemplateId = std::string;

// Marks a block whose template was removed; the block stays in the bin.
inline const TemplateId kTombstone;

struct GalleryConfig {
  size_t d = 0;
  size_t m = 0;
  std::string divided_params = "divided-32768";
  std::string complete_params = "complete-8192";
  double penetration = 0;
  // Squared-distance decision threshold for fine matching. No default.
  std::optional<double> threshold;
  packing::ScoreKind score_kind = packing::ScoreKind::kDistance;
  // Also keep full features in width-d bins for exhaustive baseline search.
  bool with_baseline = false;

  // Throws kConfig on any violated constraint, including a missing threshold.
  void Validate() const;

  bool operator==(const GalleryConfig&) const = default;
};

// One packed ciphertext of blocks plus plaintext occupancy metadata.
struct Bin {
  he::CipherHandle ct;
  size_t occupancy = 0;
  std::vector<TemplateId> slot_map;
};

struct EnrollReceipt {
  size_t bin_index = 0;
  size_t block_index = 0;
  size_t new_counter = 0;
};

// Append-only sequence of bins filled block by block. `counter` is the
// occupancy of the last bin, or 0 when that bin is full or absent.
class PackedStore {
 public:
  explicit PackedStore(packing::BlockLayout layout) : layout_(layout) {}

  const packing::BlockLayout& layout() const { return layout_; }
  const std::vector<Bin>& bins() const { return bins_; }
  size_t counter() const { return counter_; }

  // Adds `padded` (an encryption of a template padded into block `counter`)
  // to the last bin with a single homomorphic addition.
  EnrollReceipt Append(const he::Evaluator& ev, const TemplateId& id,
                       const he::CipherHandle& padded);

  // Replaces the id in its slot map with a tombstone. Returns false if absent.
  bool Tombstone(const TemplateId& id);

  // Rebuild from persisted state.
  void Restore(std::vector<Bin> bins, size_t counter);

 private:
  packing::BlockLayout layout_;
  std::vector<Bin> bins_;
  size_t counter_ = 0;
};

// D_divided (packed decomposed features), D_complete (one full-feature
// ciphertext per template), and the enrollment counter. Enrollment must be
// serialized by the caller; concurrent reads are safe.
class Gallery {
 public:
  Gallery(GalleryConfig config, std::shared_ptr<const he::Evaluator> divided,
          std::shared_ptr<const he::Evaluator> complete);

  const GalleryConfig& config() const { return config_; }
  const packing::BlockLayout& layout() const { return divided_store_.layout(); }
  const std::vector<Bin>& bins() const { return divided_store_.bins(); }
  size_t counter() const { return divided_store_.counter(); }
  const std::map<TemplateId, he::CipherHandle>& complete() const { return complete_; }
  const PackedStore& divided_store() const { return divided_store_; }
  const std::optional<PackedStore>& baseline_store() const { return baseline_store_; }

  const he::Evaluator& divided_evaluator() const { return *divided_eval_; }
  const he::Evaluator& complete_evaluator() const { return *complete_eval_; }
  const std::shared_ptr<const he::Evaluator>& divided_evaluator_ptr() const { return divided_eval_; }
  const std::shared_ptr<const he::Evaluator>& complete_evaluator_ptr() const {
    return complete_eval_;
  }

  // Number of live (non-removed) templates.
  size_t size() const { return complete_.size(); }
  bool Contains(const TemplateId& id) const { return complete_.contains(id); }

  // `f_p_ct` must encrypt PadForEnroll(decompose(f, m), counter()). When the
  // caller passes `claimed_block`, it is checked against the counter.
  // Performs exactly one homomorphic addition.
  EnrollReceipt Enroll(const TemplateId& id, const he::CipherHandle& f_d_ct,
                       const he::CipherHandle& f_p_ct,
                       std::optional<size_t> claimed_block = std::nullopt);

  // Baseline store only: `padded_full` encrypts the full feature padded into
  // block baseline_store()->counter() of a width-d layout.
  EnrollReceipt EnrollBaseline(const TemplateId& id, const he::CipherHandle& padded_full);

  void Remove(const TemplateId& id);

  void Restore(std::vector<Bin> bins, size_t counter, std::map<TemplateId, he::CipherHandle> complete,
               std::optional<std::pair<std::vector<Bin>, size_t>> baseline);

 private:
  GalleryConfig config_;
  std::shared_ptr<const he::Evaluator> divided_eval_;
  std::shared_ptr<const he::Evaluator> complete_eval_;
  PackedStore divided_store_;
  std::optional<PackedStore> baseline_store_;
  std::map<TemplateId, he::CipherHandle> complete_;
};

// The ceil(p*n) best entries (ascending distance or descending inner
// product), ties broken by ascending id. Throws kEmpty when n = 0.
std::vector<TemplateId> CandidateQueue(std::vector<std::pair<TemplateId, double>> scores,
                                       double penetration, size_t n, packing::ScoreKind kind);

// ceil(p*n), clamped to [1, n], tolerant of binary rounding in p*n.
size_t QueueSize(double penetration, size_t n);

// Writes manifest.json plus one file per ciphertext into `dir`.
void Persist(const Gallery& g, const std::filesystem::path& dir);

// Reloads a gallery written by Persist. Ciphertext hashes are verified
// (kCorrupt on mismatch); parameter names must match the evaluators
// (kParamsMismatch).
Gallery Load(const std::filesystem::path& dir, std::shared_ptr<const he::Evaluator> divided,
             std::shared_ptr<const he::Evaluator> complete);

}  // namespace pfip::gallery

#endif  // PFIP_GALLERY_GALLERY_H_
