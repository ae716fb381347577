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

#include "pfip/protocol/roles.h"

#include <algorithm>
#include <limits>
#include <map>

#include "pfip/common/error.h"
#include "pfip/common/parallel.h"
#include "pfip/packing/packing.h"

namespace pfip::protocol {
namespace {

Bytes ToBytes(const he::Evaluator& ev, const he::CipherHandle& c) { return ev.Serialize(c); }

void CheckMaterial(const PublicMaterial& m) {
  Check(m.evaluator && m.encryptor, ErrorCode::kInvalidArgument, "incomplete public material");
}

void CheckMaterial(const SecretMaterial& m) {
  Check(m.evaluator && m.decryptor, ErrorCode::kInvalidArgument, "incomplete secret material");
}

}  // namespace

Edge::Edge(gallery::GalleryConfig config, PublicMaterial divided, PublicMaterial complete)
    : config_(std::move(config)), divided_(std::move(divided)), complete_(std::move(complete)) {
  config_.Validate();
  CheckMaterial(divided_);
  CheckMaterial(complete_);
}

he::CipherHandle Edge::EncryptFull(const packing::FeatureVector& f) const {
  he::SlotVector slots(complete_.encryptor->params().slot_count(), 0.0);
  Check(f.dim() <= slots.size(), ErrorCode::kConfig, "feature longer than complete slot count");
  std::copy(f.values.begin(), f.values.end(), slots.begin());
  return complete_.encryptor->Encrypt(slots);
}

he::CipherHandle Edge::EncryptBaselineProbe(const packing::FeatureVector& f) const {
  packing::BlockLayout layout(divided_.encryptor->params().slot_count(), config_.d);
  return divided_.encryptor->Encrypt(
      packing::ReplicateProbe(packing::DecomposedFeature{f.values}, layout));
}

EnrollRequest Edge::MakeEnrollRequest(const std::string& id, std::span<const double> raw,
                                      size_t block, std::optional<size_t> baseline_block) const {
  Check(raw.size() == config_.d, ErrorCode::kInvalidArgument,
        "feature has dimension " + std::to_string(raw.size()) + ", expected " +
            std::to_string(config_.d));
  const auto f = packing::Normalize(raw);
  const auto fm = packing::Decompose(f, config_.m);
  packing::BlockLayout layout(divided_.encryptor->params().slot_count(), config_.m);

  EnrollRequest req;
  req.id = id;
  req.block = block;
  req.full = ToBytes(*complete_.evaluator, EncryptFull(f));
  req.packed = ToBytes(*divided_.evaluator,
                       divided_.encryptor->Encrypt(packing::PadForEnroll(fm, block, layout)));
  if (config_.with_baseline) {
    Check(baseline_block.has_value(), ErrorCode::kInvalidArgument,
          "baseline block required for a gallery with baseline bins");
    packing::BlockLayout wide(divided_.encryptor->params().slot_count(), config_.d);
    req.baseline = ToBytes(*divided_.evaluator,
                           divided_.encryptor->Encrypt(packing::PadForEnroll(
                               packing::DecomposedFeature{f.values}, *baseline_block, wide)));
    req.baseline_block = *baseline_block;
  }
  return req;
}

IdentifyRequest Edge::MakeIdentifyRequest(std::span<const double> raw, bool with_baseline) const {
  Check(raw.size() == config_.d, ErrorCode::kInvalidArgument,
        "probe has dimension " + std::to_string(raw.size()) + ", expected " +
            std::to_string(config_.d));
  const auto f = packing::Normalize(raw);
  packing::BlockLayout layout(divided_.encryptor->params().slot_count(), config_.m);
  IdentifyRequest req;
  req.packed = ToBytes(*divided_.evaluator, divided_.encryptor->Encrypt(packing::ReplicateProbe(
                                                packing::Decompose(f, config_.m), layout)));
  req.full = ToBytes(*complete_.evaluator, EncryptFull(f));
  if (with_baseline) req.baseline = ToBytes(*divided_.evaluator, EncryptBaselineProbe(f));
  return req;
}

ComputationServer::ComputationServer(gallery::Gallery gallery, size_t threads)
    : gallery_(std::move(gallery)), threads_(threads == 0 ? 1 : threads) {}

std::optional<size_t> ComputationServer::baseline_counter() const {
  if (!gallery_.baseline_store()) return std::nullopt;
  return gallery_.baseline_store()->counter();
}

EnrollAck ComputationServer::HandleEnroll(const EnrollRequest& req) {
  const auto& div = gallery_.divided_evaluator();
  const auto& comp = gallery_.complete_evaluator();
  auto full = comp.Deserialize(req.full);
  auto packed = div.Deserialize(req.packed);
  std::optional<he::CipherHandle> base;
  if (gallery_.baseline_store()) {
    Check(req.baseline.has_value(), ErrorCode::kInvalidArgument,
          "enrollment lacks the baseline ciphertext");
    Check(req.baseline_block == gallery_.baseline_store()->counter(),
          ErrorCode::kPlacementMismatch, "baseline ciphertext padded for the wrong block");
    base = div.Deserialize(*req.baseline);
  }
  auto receipt = gallery_.Enroll(req.id, full, packed, req.block);
  if (base) gallery_.EnrollBaseline(req.id, *base);
  return EnrollAck{receipt.new_counter, receipt.bin_index, receipt.block_index};
}

namespace {

PreselectResult PackScores(const he::Evaluator& ev, const std::vector<gallery::Bin>& bins,
                           const std::vector<he::CipherHandle>& scores, size_t width,
                           size_t threads) {
  PreselectResult out;
  out.width = width;
  out.bins.resize(bins.size());
  ParallelFor(bins.size(), threads, [&](size_t i) {
    out.bins[i].ct = ev.Serialize(scores[i]);
    out.bins[i].occupancy = bins[i].occupancy;
    out.bins[i].slot_map = bins[i].slot_map;
  });
  return out;
}

}  // namespace

PreselectResult ComputationServer::Preselect(const IdentifyRequest& req) const {
  const auto& ev = gallery_.divided_evaluator();
  auto scores = protocol::Preselect(gallery_, ev.Deserialize(req.packed), threads_);
  return PackScores(ev, gallery_.bins(), scores, gallery_.layout().width(), threads_);
}

FineResult ComputationServer::FineMatch(const IdentifyRequest& req,
                                        const CandidateSet& candidates) const {
  const auto& ev = gallery_.complete_evaluator();
  auto results = protocol::FineMatch(gallery_, ev.Deserialize(req.full), candidates.ids, threads_);
  FineResult out;
  out.entries.resize(results.size());
  ParallelFor(results.size(), threads_, [&](size_t i) {
    out.entries[i] = FineEntry{results[i].first, ev.Serialize(results[i].second)};
  });
  return out;
}

PreselectResult ComputationServer::BaselineScores(const IdentifyRequest& req) const {
  const auto& store = gallery_.baseline_store();
  Check(store.has_value(), ErrorCode::kConfig, "gallery has no baseline store");
  Check(req.baseline.has_value(), ErrorCode::kInvalidArgument, "request lacks the baseline probe");
  const auto& ev = gallery_.divided_evaluator();
  auto probe = ev.Deserialize(*req.baseline);
  const auto& bins = store->bins();
  std::vector<he::CipherHandle> scores(bins.size());
  ParallelFor(bins.size(), threads_, [&](size_t i) {
    scores[i] = packing::BlockScores(ev, probe, bins[i].ct, store->layout(),
                                     packing::ScoreKind::kDistance);
  });
  return PackScores(ev, bins, scores, store->layout().width(), threads_);
}

AuthenticationServer::AuthenticationServer(AsConfig config, SecretMaterial divided,
                                           SecretMaterial complete)
    : config_(config), divided_(std::move(divided)), complete_(std::move(complete)) {
  CheckMaterial(divided_);
  CheckMaterial(complete_);
  Check(config_.threshold > 0, ErrorCode::kConfig, "threshold must be positive");
  Check(config_.penetration > 0 && config_.penetration <= 1, ErrorCode::kConfig,
        "penetration must lie in (0, 1]");
}

namespace {

struct Unpacked {
  std::vector<he::CipherHandle> cts;
  std::vector<std::vector<std::string>> maps;
  std::vector<size_t> occupancy;
};

Unpacked Unpack(const he::Evaluator& ev, const PreselectResult& r) {
  Unpacked u;
  for (const auto& b : r.bins) {
    u.cts.push_back(ev.Deserialize(b.ct));
    u.maps.push_back(b.slot_map);
    u.occupancy.push_back(b.occupancy);
  }
  return u;
}

std::vector<std::pair<std::string, double>> LiveScores(
    const he::Decryptor& dec, std::span<const he::CipherHandle> cts,
    std::span<const std::vector<std::string>> maps, std::span<const size_t> occupancy,
    const packing::BlockLayout& layout) {
  Check(cts.size() == maps.size() && cts.size() == occupancy.size(), ErrorCode::kInvalidArgument,
        "score ciphertexts and bin metadata differ in length");
  std::vector<std::pair<std::string, double>> scores;
  for (size_t b = 0; b < cts.size(); ++b) {
    Check(maps[b].size() == occupancy[b], ErrorCode::kCorrupt, "slot map disagrees with occupancy");
    auto plain = dec.Decrypt(cts[b]);
    for (auto [block, score] : packing::ExtractBlockScores(plain, layout, occupancy[b])) {
      const auto& id = maps[b][block];
      if (id != gallery::kTombstone) scores.emplace_back(id, score);
    }
  }
  return scores;
}

}  // namespace

CandidateSet AuthenticationServer::PreselectDecide(const PreselectResult& result) const {
  auto u = Unpack(*divided_.evaluator, result);
  packing::BlockLayout layout(divided_.decryptor->params().slot_count(), result.width);
  return AsPreselectDecide(*divided_.decryptor, u.cts, u.maps, u.occupancy, layout,
                           config_.penetration, config_.score_kind);
}

Decision AuthenticationServer::Decide(const FineResult& result) const {
  std::vector<std::pair<std::string, he::CipherHandle>> cts;
  cts.reserve(result.entries.size());
  for (const auto& e : result.entries) {
    cts.emplace_back(e.id, complete_.evaluator->Deserialize(e.ct));
  }
  return AsDecide(*complete_.decryptor, cts, config_.threshold);
}

Decision AuthenticationServer::BaselineDecide(const PreselectResult& result) const {
  auto u = Unpack(*divided_.evaluator, result);
  packing::BlockLayout layout(divided_.decryptor->params().slot_count(), result.width);
  return DecideFromDistances(
      LiveScores(*divided_.decryptor, u.cts, u.maps, u.occupancy, layout), config_.threshold);
}

std::vector<he::CipherHandle> Preselect(const gallery::Gallery& g, const he::CipherHandle& probe,
                                        size_t threads) {
  const auto& ev = g.divided_evaluator();
  Check(probe.params_id() == ev.params_id(), ErrorCode::kParamsMismatch,
        "probe is not under the divided parameters");
  const auto& bins = g.bins();
  std::vector<he::CipherHandle> out(bins.size());
  ParallelFor(bins.size(), threads, [&](size_t i) {
    out[i] = packing::BlockScores(ev, probe, bins[i].ct, g.layout(), g.config().score_kind);
  });
  return out;
}

std::vector<std::pair<std::string, he::CipherHandle>> FineMatch(const gallery::Gallery& g,
                                                                const he::CipherHandle& probe,
                                                                std::span<const std::string> ids,
                                                                size_t threads) {
  const auto& ev = g.complete_evaluator();
  Check(probe.params_id() == ev.params_id(), ErrorCode::kParamsMismatch,
        "probe is not under the complete parameters");
  std::vector<const he::CipherHandle*> stored;
  stored.reserve(ids.size());
  for (const auto& id : ids) {
    auto it = g.complete().find(id);
    Check(it != g.complete().end(), ErrorCode::kUnknownId, "candidate '" + id + "' not enrolled");
    stored.push_back(&it->second);
  }
  std::vector<std::pair<std::string, he::CipherHandle>> out(ids.size());
  ParallelFor(ids.size(), threads, [&](size_t i) {
    auto diff = ev.Sub(probe, *stored[i]);
    auto sq = ev.MultiplyNoRescale(diff, diff);
    out[i] = {ids[i], ev.Rescale(packing::RotateSum(ev, sq, g.config().d))};
  });
  return out;
}

CandidateSet AsPreselectDecide(const he::Decryptor& dec,
                               std::span<const he::CipherHandle> score_cts,
                               std::span<const std::vector<std::string>> slot_maps,
                               std::span<const size_t> occupancy, const packing::BlockLayout& layout,
                               double penetration, packing::ScoreKind kind) {
  auto scores = LiveScores(dec, score_cts, slot_maps, occupancy, layout);
  if (scores.empty()) return {};
  const size_t n = scores.size();
  return CandidateSet{gallery::CandidateQueue(std::move(scores), penetration, n, kind)};
}

Decision DecideFromDistances(std::vector<std::pair<std::string, double>> distances, double tau) {
  Check(tau > 0, ErrorCode::kInvalidArgument, "threshold must be positive");
  if (distances.empty()) {
    return Decision{std::nullopt, std::numeric_limits<double>::infinity(), "empty queue"};
  }
  auto best = std::min_element(distances.begin(), distances.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
  });
  if (best->second <= tau) return Decision{best->first, best->second, "match"};
  return Decision{std::nullopt, best->second, "above threshold"};
}

Decision AsDecide(const he::Decryptor& dec,
                  std::span<const std::pair<std::string, he::CipherHandle>> results, double tau) {
  std::vector<std::pair<std::string, double>> distances;
  distances.reserve(results.size());
  for (const auto& [id, ct] : results) distances.emplace_back(id, dec.Decrypt(ct)[0]);
  return DecideFromDistances(std::move(distances), tau);
}

}  // namespace pfip::protocol
