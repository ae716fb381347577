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

#ifndef PFIP_PROTOCOL_ROLES_H_
#define PFIP_PROTOCOL_ROLES_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pfip/gallery/gallery.h"
#include "pfip/he/backend.h"
#include "pfip/protocol/messages.h"

namespace pfip::protocol {

// Public-key side of one parameter set. The evaluator carries relinearization
// and Galois keys only.
struct PublicMaterial {
  std::shared_ptr<const he::Evaluator> evaluator;
  std::shared_ptr<const he::Encryptor> encryptor;
};

// Secret-key side of one parameter set. The evaluator is used only to decode
// ciphertext bytes.
struct SecretMaterial {
  std::shared_ptr<const he::Evaluator> evaluator;
  std::shared_ptr<const he::Decryptor> decryptor;
};

// Capture device: normalizes, decomposes, packs and encrypts. Holds no
// secret key.
class Edge {
 public:
  Edge(gallery::GalleryConfig config, PublicMaterial divided, PublicMaterial complete);

  const gallery::GalleryConfig& config() const { return config_; }

  // `block` is the CS counter obtained before the request is built.
  // `baseline_block` is required when the gallery keeps baseline bins.
  EnrollRequest MakeEnrollRequest(const std::string& id, std::span<const double> raw,
                                  size_t block,
                                  std::optional<size_t> baseline_block = std::nullopt) const;

  IdentifyRequest MakeIdentifyRequest(std::span<const double> raw, bool with_baseline = false) const;

 private:
  he::CipherHandle EncryptFull(const packing::FeatureVector& f) const;
  he::CipherHandle EncryptBaselineProbe(const packing::FeatureVector& f) const;

  gallery::GalleryConfig config_;
  PublicMaterial divided_;
  PublicMaterial complete_;
};

// Computation server: owns the encrypted gallery and evaluates kernels.
// Constructible only from a Gallery, which holds evaluators and ciphertexts.
class ComputationServer {
 public:
  explicit ComputationServer(gallery::Gallery gallery, size_t threads = 1);

  gallery::Gallery& gallery() { return gallery_; }
  const gallery::Gallery& gallery() const { return gallery_; }
  size_t counter() const { return gallery_.counter(); }
  std::optional<size_t> baseline_counter() const;

  size_t threads() const { return threads_; }
  void set_threads(size_t t) { threads_ = t == 0 ? 1 : t; }

  EnrollAck HandleEnroll(const EnrollRequest& req);
  PreselectResult Preselect(const IdentifyRequest& req) const;
  FineResult FineMatch(const IdentifyRequest& req, const CandidateSet& candidates) const;
  PreselectResult BaselineScores(const IdentifyRequest& req) const;

 private:
  gallery::Gallery gallery_;
  size_t threads_;
};

struct AsConfig {
  double penetration = 0;
  double threshold = 0;
  packing::ScoreKind score_kind = packing::ScoreKind::kDistance;
};

// Authentication server: holds the secret keys and thresholds, never the
// gallery ciphertexts.
class AuthenticationServer {
 public:
  AuthenticationServer(AsConfig config, SecretMaterial divided, SecretMaterial complete);

  const AsConfig& config() const { return config_; }

  CandidateSet PreselectDecide(const PreselectResult& result) const;
  Decision Decide(const FineResult& result) const;
  Decision BaselineDecide(const PreselectResult& result) const;

 private:
  AsConfig config_;
  SecretMaterial divided_;
  SecretMaterial complete_;
};

// Kernel-level operations on handles.

// One BlockScores ciphertext per bin, in bin order.
std::vector<he::CipherHandle> Preselect(const gallery::Gallery& g, const he::CipherHandle& probe,
                                        size_t threads = 1);

// Per candidate: Sub, Multiply, RotateSum over d slots. Slot 0 of each result
// is the squared distance between full features. Throws kUnknownId.
std::vector<std::pair<std::string, he::CipherHandle>> FineMatch(
    const gallery::Gallery& g, const he::CipherHandle& probe, std::span<const std::string> ids,
    size_t threads = 1);

// Decrypts per-bin scores, maps occupied blocks to ids (skipping removed
// templates) and keeps the best ceil(p*n).
CandidateSet AsPreselectDecide(const he::Decryptor& dec,
                               std::span<const he::CipherHandle> score_cts,
                               std::span<const std::vector<std::string>> slot_maps,
                               std::span<const size_t> occupancy, const packing::BlockLayout& layout,
                               double penetration, packing::ScoreKind kind);

// Argmin with ties by ascending id; a match iff the minimum is <= tau.
Decision DecideFromDistances(std::vector<std::pair<std::string, double>> distances, double tau);

Decision AsDecide(const he::Decryptor& dec,
                  std::span<const std::pair<std::string, he::CipherHandle>> results, double tau);

}  // namespace pfip::protocol

#endif  // PFIP_PROTOCOL_ROLES_H_
