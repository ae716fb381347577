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

#include "pfip/gallery/gallery.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "pfip/common/error.h"

namespace pfip::gallery {

void GalleryConfig::Validate() const {
  Check(std::has_single_bit(d), ErrorCode::kConfig, "d must be a power of two");
  Check(std::has_single_bit(m), ErrorCode::kConfig, "m must be a power of two");
  Check(m <= d, ErrorCode::kConfig, "m must not exceed d");
  Check(penetration > 0 && penetration <= 1, ErrorCode::kConfig, "penetration must lie in (0, 1]");
  Check(threshold.has_value(), ErrorCode::kConfig, "decision threshold is required");
  Check(std::isfinite(*threshold), ErrorCode::kConfig, "threshold must be finite");
  // Fine matching always scores squared distance, whatever the preselection kind.
  Check(*threshold > 0, ErrorCode::kConfig, "threshold must be positive");
}

EnrollReceipt PackedStore::Append(const he::Evaluator& ev, const TemplateId& id,
                                  const he::CipherHandle& padded) {
  if (counter_ == 0) {
    Bin fresh;
    fresh.ct = ev.Zero(padded.level());
    bins_.push_back(std::move(fresh));
  }
  Bin& bin = bins_.back();
  bin.ct = ev.Add(bin.ct, padded);
  EnrollReceipt receipt;
  receipt.bin_index = bins_.size() - 1;
  receipt.block_index = counter_;
  bin.slot_map.push_back(id);
  bin.occupancy = bin.slot_map.size();
  counter_ = counter_ + 1 == layout_.capacity() ? 0 : counter_ + 1;
  receipt.new_counter = counter_;
  return receipt;
}

bool PackedStore::Tombstone(const TemplateId& id) {
  for (auto& bin : bins_) {
    auto it = std::find(bin.slot_map.begin(), bin.slot_map.end(), id);
    if (it != bin.slot_map.end()) {
      *it = kTombstone;
      return true;
    }
  }
  return false;
}

void PackedStore::Restore(std::vector<Bin> bins, size_t counter) {
  Check(counter < layout_.capacity(), ErrorCode::kCorrupt, "counter above capacity");
  const bool last_partial = !bins.empty() && bins.back().occupancy < layout_.capacity();
  Check(counter == (last_partial ? bins.back().occupancy : 0), ErrorCode::kCorrupt,
        "counter disagrees with last bin occupancy");
  for (const auto& bin : bins) {
    Check(bin.occupancy == bin.slot_map.size() && bin.occupancy <= layout_.capacity(),
          ErrorCode::kCorrupt, "bin occupancy disagrees with slot map");
  }
  bins_ = std::move(bins);
  counter_ = counter;
}

Gallery::Gallery(GalleryConfig config, std::shared_ptr<const he::Evaluator> divided,
                 std::shared_ptr<const he::Evaluator> complete)
    : config_(std::move(config)),
      divided_eval_(std::move(divided)),
      complete_eval_(std::move(complete)),
      divided_store_(packing::BlockLayout(divided_eval_->params().slot_count(), config_.m)) {
  config_.Validate();
  Check(complete_eval_->params().slot_count() >= config_.d, ErrorCode::kConfig,
        "complete parameters have fewer slots than d");
  if (config_.with_baseline) {
    baseline_store_.emplace(packing::BlockLayout(divided_eval_->params().slot_count(), config_.d));
  }
}

EnrollReceipt Gallery::Enroll(const TemplateId& id, const he::CipherHandle& f_d_ct,
                              const he::CipherHandle& f_p_ct, std::optional<size_t> claimed_block) {
  Check(id != kTombstone, ErrorCode::kInvalidArgument, "template id must not be empty");
  Check(!complete_.contains(id), ErrorCode::kDuplicateId, "template '" + id + "' already enrolled");
  if (claimed_block) {
    Check(*claimed_block == divided_store_.counter(), ErrorCode::kPlacementMismatch,
          "ciphertext padded for block " + std::to_string(*claimed_block) + " but counter is " +
              std::to_string(divided_store_.counter()));
  }
  Check(f_d_ct.params_id() == complete_eval_->params_id(), ErrorCode::kParamsMismatch,
        "full-feature ciphertext is not under the complete parameters");
  auto receipt = divided_store_.Append(*divided_eval_, id, f_p_ct);
  complete_.emplace(id, f_d_ct);
  return receipt;
}

EnrollReceipt Gallery::EnrollBaseline(const TemplateId& id, const he::CipherHandle& padded_full) {
  Check(baseline_store_.has_value(), ErrorCode::kConfig, "gallery has no baseline store");
  return baseline_store_->Append(*divided_eval_, id, padded_full);
}

void Gallery::Remove(const TemplateId& id) {
  Check(complete_.erase(id) == 1, ErrorCode::kUnknownId, "template '" + id + "' not enrolled");
  divided_store_.Tombstone(id);
  if (baseline_store_) baseline_store_->Tombstone(id);
}

void Gallery::Restore(std::vector<Bin> bins, size_t counter,
                      std::map<TemplateId, he::CipherHandle> complete,
                      std::optional<std::pair<std::vector<Bin>, size_t>> baseline) {
  divided_store_.Restore(std::move(bins), counter);
  for (const auto& bin : divided_store_.bins()) {
    for (const auto& id : bin.slot_map) {
      Check(id == kTombstone || complete.contains(id), ErrorCode::kCorrupt,
            "slot map references '" + id + "' without a complete ciphertext");
    }
  }
  complete_ = std::move(complete);
  if (baseline) {
    Check(baseline_store_.has_value(), ErrorCode::kCorrupt, "unexpected baseline store");
    baseline_store_->Restore(std::move(baseline->first), baseline->second);
  }
}

size_t QueueSize(double penetration, size_t n) {
  Check(penetration > 0 && penetration <= 1, ErrorCode::kInvalidArgument,
        "penetration must lie in (0, 1]");
  const double raw = penetration * static_cast<double>(n);
  auto q = static_cast<size_t>(std::ceil(raw - 1e-9 * std::max(1.0, raw)));
  return std::clamp<size_t>(q, std::min<size_t>(1, n), n);
}

std::vector<TemplateId> CandidateQueue(std::vector<std::pair<TemplateId, double>> scores,
                                       double penetration, size_t n, packing::ScoreKind kind) {
  Check(n > 0, ErrorCode::kEmpty, "gallery is empty");
  Check(scores.size() == n, ErrorCode::kInvalidArgument,
        "expected " + std::to_string(n) + " scores, got " + std::to_string(scores.size()));
  const size_t q = QueueSize(penetration, n);
  auto order = [kind](const auto& a, const auto& b) {
    if (a.second != b.second) return packing::Better(kind, a.second, b.second);
    return a.first < b.first;
  };
  std::partial_sort(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(q), scores.end(),
                    order);
  std::vector<TemplateId> out;
  out.reserve(q);
  for (size_t i = 0; i < q; ++i) out.push_back(scores[i].first);
  return out;
}

}  // namespace pfip::gallery
