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

#include "pfip/protocol/identify.h"

#include <chrono>

#include "json.hpp"
#include "pfip/common/error.h"
#include "pfip/he/backend_factory.h"
#include "pfip/he/params.h"

namespace pfip::protocol {
namespace {

using Clock = std::chrono::steady_clock;

std::vector<int> StepsBelow(size_t width) {
  std::vector<int> steps;
  for (size_t k = 1; k < width; k *= 2) steps.push_back(static_cast<int>(k));
  return steps;
}

template <typename T>
T As(Message m) {
  auto* p = std::get_if<T>(&m);
  Check(p != nullptr, ErrorCode::kCorrupt, "unexpected message " + std::string(MessageName(m)));
  return std::move(*p);
}

// Times one stage and attributes the evaluator op deltas to it.
class StageClock {
 public:
  StageClock(const Roles& roles, TraceReport& trace, std::string name)
      : roles_(roles), trace_(trace), name_(std::move(name)), start_(Clock::now()),
        before_(Counts()) {}

  void Stop() {
    StageTrace s;
    s.name = name_;
    s.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    s.ops = Counts() - before_;
    trace_.stages.push_back(std::move(s));
  }

 private:
  he::OpCounts Counts() const {
    const auto& g = roles_.cs.gallery();
    return g.divided_evaluator().counts() + g.complete_evaluator().counts();
  }

  const Roles& roles_;
  TraceReport& trace_;
  std::string name_;
  Clock::time_point start_;
  he::OpCounts before_;
};

TraceReport NewTrace(const Roles& roles) {
  TraceReport t;
  t.backend = std::string(he::BackendKindName(roles.backend));
  t.threads = roles.cs.threads();
  t.gallery_size = roles.cs.gallery().size();
  return t;
}

uint64_t WireBytes(const Transport& transport) {
  auto* s = dynamic_cast<const SerializingTransport*>(&transport);
  return s ? s->bytes_carried() : 0;
}

}  // namespace

double TraceReport::total_seconds() const {
  double t = 0;
  for (const auto& s : stages) t += s.seconds;
  return t;
}

const StageTrace* TraceReport::stage(std::string_view name) const {
  for (const auto& s : stages) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::string TraceReport::ToJson() const {
  nlohmann::ordered_json j;
  j["backend"] = backend;
  j["threads"] = threads;
  j["gallery_size"] = gallery_size;
  j["bins"] = bins;
  j["queue_size"] = queue_size;
  j["wire_bytes"] = wire_bytes;
  j["total_seconds"] = total_seconds();
  auto& arr = j["stages"] = nlohmann::ordered_json::array();
  for (const auto& s : stages) {
    arr.push_back({{"name", s.name},
                   {"seconds", s.seconds},
                   {"ops",
                    {{"add", s.ops.add},
                     {"sub", s.ops.sub},
                     {"mul", s.ops.mul},
                     {"rotate", s.ops.rotate},
                     {"rescale", s.ops.rescale}}}});
  }
  return j.dump(2);
}

std::vector<int> DividedRotationSteps(const gallery::GalleryConfig& config) {
  return StepsBelow(config.with_baseline ? config.d : config.m);
}

std::vector<int> CompleteRotationSteps(const gallery::GalleryConfig& config) {
  return StepsBelow(config.d);
}

Roles MakeRoles(const RoleSetup& setup) {
  const auto& cfg = setup.config;
  cfg.Validate();
  auto div = he::MakeBackend(setup.backend, he::Preset(cfg.divided_params),
                             DividedRotationSteps(cfg), setup.seed, setup.mode);
  auto comp = he::MakeBackend(setup.backend, he::Preset(cfg.complete_params),
                              CompleteRotationSteps(cfg), setup.seed ^ 0x5bd1e9955bd1e995ULL,
                              setup.mode);
  return AssembleRoles(cfg, setup.backend, div, comp, setup.threads);
}

Roles AssembleRoles(const gallery::GalleryConfig& config, he::BackendKind kind,
                    const he::Backend& divided, const he::Backend& complete, size_t threads,
                    std::optional<gallery::Gallery> existing, std::optional<AsConfig> as_config) {
  config.Validate();
  Edge edge(config, PublicMaterial{divided.evaluator, divided.encryptor},
            PublicMaterial{complete.evaluator, complete.encryptor});
  gallery::Gallery g = existing ? std::move(*existing)
                                : gallery::Gallery(config, divided.evaluator, complete.evaluator);
  ComputationServer cs(std::move(g), threads);
  AuthenticationServer as(
      as_config.value_or(AsConfig{config.penetration, *config.threshold, config.score_kind}),
      SecretMaterial{divided.evaluator, divided.decryptor},
      SecretMaterial{complete.evaluator, complete.decryptor});
  return Roles{kind, std::move(edge), std::move(cs), std::move(as)};
}

EnrollAck Enroll(Roles& roles, const std::string& id, std::span<const double> raw,
                 Transport& transport) {
  // Counter handshake: the edge learns where the next template lands.
  const size_t block = roles.cs.counter();
  auto req = roles.edge.MakeEnrollRequest(id, raw, block, roles.cs.baseline_counter());
  auto delivered = As<EnrollRequest>(transport.Carry(req));
  return As<EnrollAck>(transport.Carry(roles.cs.HandleEnroll(delivered)));
}

IdentifyResult Identify(Roles& roles, std::span<const double> raw, Transport& transport) {
  IdentifyResult out;
  out.trace = NewTrace(roles);
  out.trace.bins = roles.cs.gallery().bins().size();
  const uint64_t wire0 = WireBytes(transport);

  StageClock enc(roles, out.trace, "encrypt");
  auto req = As<IdentifyRequest>(transport.Carry(roles.edge.MakeIdentifyRequest(raw)));
  enc.Stop();

  StageClock pre(roles, out.trace, "preselect");
  auto scores = As<PreselectResult>(transport.Carry(roles.cs.Preselect(req)));
  pre.Stop();

  StageClock pd(roles, out.trace, "preselect_decide");
  out.candidates = As<CandidateSet>(transport.Carry(roles.as.PreselectDecide(scores)));
  pd.Stop();
  out.trace.queue_size = out.candidates.ids.size();

  StageClock fine(roles, out.trace, "fine_match");
  auto fine_result = As<FineResult>(transport.Carry(roles.cs.FineMatch(req, out.candidates)));
  fine.Stop();

  StageClock dec(roles, out.trace, "decide");
  out.decision = As<Decision>(transport.Carry(roles.as.Decide(fine_result)));
  dec.Stop();

  out.trace.wire_bytes = WireBytes(transport) - wire0;
  return out;
}

IdentifyResult BaselineIdentify(Roles& roles, std::span<const double> raw, Transport& transport) {
  IdentifyResult out;
  out.trace = NewTrace(roles);
  const auto& store = roles.cs.gallery().baseline_store();
  Check(store.has_value(), ErrorCode::kConfig, "gallery has no baseline store");
  out.trace.bins = store->bins().size();
  const uint64_t wire0 = WireBytes(transport);

  StageClock enc(roles, out.trace, "encrypt");
  auto req = As<IdentifyRequest>(transport.Carry(roles.edge.MakeIdentifyRequest(raw, true)));
  enc.Stop();

  StageClock scan(roles, out.trace, "exhaustive");
  auto scores = As<PreselectResult>(transport.Carry(roles.cs.BaselineScores(req)));
  scan.Stop();

  StageClock dec(roles, out.trace, "decide");
  out.decision = As<Decision>(transport.Carry(roles.as.BaselineDecide(scores)));
  dec.Stop();

  out.trace.queue_size = roles.cs.gallery().size();
  out.trace.wire_bytes = WireBytes(transport) - wire0;
  return out;
}

}  // namespace pfip::protocol
