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

#ifndef PFIP_PROTOCOL_IDENTIFY_H_
#define PFIP_PROTOCOL_IDENTIFY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pfip/gallery/gallery.h"
#include "pfip/he/backend.h"
#include "pfip/protocol/messages.h"
#include "pfip/protocol/roles.h"

namespace pfip::protocol {

struct StageTrace {
  std::string name;
  double seconds = 0;
  he::OpCounts ops;
};

struct TraceReport {
  std::string backend;
  size_t threads = 1;
  size_t gallery_size = 0;
  size_t bins = 0;
  size_t queue_size = 0;
  uint64_t wire_bytes = 0;
  std::vector<StageTrace> stages;

  double total_seconds() const;
  const StageTrace* stage(std::string_view name) const;
  std::string ToJson() const;
};

struct Roles {
  he::BackendKind backend;
  Edge edge;
  ComputationServer cs;
  AuthenticationServer as;
};

struct RoleSetup {
  gallery::GalleryConfig config;
  he::BackendKind backend = he::BackendKind::kCkks;
  uint64_t seed = 0;
  size_t threads = 1;
  he::DecryptMode mode = he::DecryptMode::kStrict;
};

// Rotation steps each parameter set needs for `config`.
std::vector<int> DividedRotationSteps(const gallery::GalleryConfig& config);
std::vector<int> CompleteRotationSteps(const gallery::GalleryConfig& config);

// Generates keys for both parameter sets and hands each role only its share.
Roles MakeRoles(const RoleSetup& setup);

// Splits existing backends across the roles. `existing` (e.g. a loaded
// gallery) replaces the empty gallery; `as_config` overrides the AS
// penetration and threshold taken from `config`.
Roles AssembleRoles(const gallery::GalleryConfig& config, he::BackendKind kind,
                    const he::Backend& divided, const he::Backend& complete, size_t threads = 1,
                    std::optional<gallery::Gallery> existing = std::nullopt,
                    std::optional<AsConfig> as_config = std::nullopt);

struct IdentifyResult {
  Decision decision;
  CandidateSet candidates;
  TraceReport trace;
};

EnrollAck Enroll(Roles& roles, const std::string& id, std::span<const double> raw,
                 Transport& transport);

// normalize -> decompose -> replicate -> encrypt -> preselect -> AS queue ->
// fine match -> AS decision.
IdentifyResult Identify(Roles& roles, std::span<const double> raw, Transport& transport);

// Exhaustive packed search over the baseline bins; no preselection.
IdentifyResult BaselineIdentify(Roles& roles, std::span<const double> raw, Transport& transport);

}  // namespace pfip::protocol

#endif  // PFIP_PROTOCOL_IDENTIFY_H_
