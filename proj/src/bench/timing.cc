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

#include "pfip/bench/timing.h"

#include <chrono>
#include <cstdio>

#include "json.hpp"
#include "pfip/bench/dataset.h"
#include "pfip/common/error.h"
#include "pfip/protocol/identify.h"

namespace pfip::bench {
namespace {

nlohmann::ordered_json OpsJson(const he::OpCounts& o) {
  return {{"add", o.add}, {"sub", o.sub}, {"mul", o.mul}, {"rotate", o.rotate},
          {"rescale", o.rescale}};
}

}  // namespace

const StageTiming* TimingReport::stage(std::string_view name) const {
  for (const auto& s : stages) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

TimingReport BenchTiming(const TimingConfig& config) {
  Check(config.n > 0 && config.probes > 0, ErrorCode::kConfig, "n and probes must be positive");
  Check(config.probes <= config.n, ErrorCode::kConfig, "more probes than subjects");
  const auto ds = SynthDataset(config.n, 2, config.gallery.d, config.sigma, config.seed);

  protocol::RoleSetup setup;
  setup.config = config.gallery;
  setup.backend = config.backend;
  setup.seed = config.seed;
  setup.threads = config.threads;
  auto roles = protocol::MakeRoles(setup);
  protocol::DirectTransport transport;

  TimingReport report;
  report.config = config;
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& s : ds.enrolled) protocol::Enroll(roles, s.subject, s.feature.values, transport);
  report.enroll_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  double total = 0;
  for (size_t i = 0; i < config.probes; ++i) {
    const auto& probe = ds.probes[i];
    auto result = protocol::Identify(roles, probe.feature.values, transport);
    total += result.trace.total_seconds();
    report.bins = result.trace.bins;
    report.queue = result.trace.queue_size;
    if (result.decision.matched()) {
      ++report.matched;
      if (*result.decision.id == probe.subject) ++report.correct;
    }
    if (report.stages.empty()) {
      for (const auto& st : result.trace.stages) report.stages.push_back({st.name, 0, st.ops});
    }
    for (size_t k = 0; k < result.trace.stages.size(); ++k) {
      report.stages[k].mean_seconds += result.trace.stages[k].seconds;
    }
  }
  const double probes = static_cast<double>(config.probes);
  for (auto& s : report.stages) s.mean_seconds /= probes;
  report.identify_mean_seconds = total / probes;

  // Preselection scales with bins, fine matching with the queue length.
  const auto* pre = report.stage("preselect");
  const auto* fine = report.stage("fine_match");
  const double per_bin = pre && report.bins ? pre->mean_seconds / report.bins : 0;
  const double per_cand = fine && report.queue ? fine->mean_seconds / report.queue : 0;
  const size_t capacity = roles.cs.gallery().layout().capacity();
  for (size_t n : config.trend_n) {
    TrendPoint tp;
    tp.n = n;
    tp.bins = (n + capacity - 1) / capacity;
    tp.queue = gallery::QueueSize(config.gallery.penetration, n);
    tp.preselect_seconds = per_bin * static_cast<double>(tp.bins);
    tp.fine_seconds = per_cand * static_cast<double>(tp.queue);
    report.trend.push_back(tp);
  }
  return report;
}

std::string TimingReport::ToJson() const {
  nlohmann::ordered_json j;
  j["backend"] = std::string(he::BackendKindName(config.backend));
  j["threads"] = config.threads;
  j["n"] = config.n;
  j["d"] = config.gallery.d;
  j["m"] = config.gallery.m;
  j["p"] = config.gallery.penetration;
  j["tau"] = config.gallery.threshold.value_or(0);
  j["divided_params"] = config.gallery.divided_params;
  j["complete_params"] = config.gallery.complete_params;
  j["seed"] = config.seed;
  j["probes"] = config.probes;
  j["bins"] = bins;
  j["queue"] = queue;
  j["matched"] = matched;
  j["correct"] = correct;
  j["enroll_seconds"] = enroll_seconds;
  j["identify_mean_seconds"] = identify_mean_seconds;
  j["reference_latency_seconds"] = kReferenceLatencySeconds;
  auto& st = j["stages"] = nlohmann::ordered_json::array();
  for (const auto& s : stages) {
    st.push_back({{"name", s.name}, {"mean_seconds", s.mean_seconds}, {"ops", OpsJson(s.ops)}});
  }
  auto& tr = j["trend"] = nlohmann::ordered_json::array();
  for (const auto& t : trend) {
    tr.push_back({{"n", t.n},
                  {"bins", t.bins},
                  {"queue", t.queue},
                  {"preselect_seconds", t.preselect_seconds},
                  {"fine_seconds", t.fine_seconds}});
  }
  return j.dump(2);
}

std::string TimingReport::ToText() const {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "backend=%s threads=%zu n=%zu d=%zu m=%zu p=%.3f bins=%zu queue=%zu\n",
                std::string(he::BackendKindName(config.backend)).c_str(), config.threads, config.n,
                config.gallery.d, config.gallery.m, config.gallery.penetration, bins, queue);
  out += buf;
  std::snprintf(buf, sizeof buf, "%-18s %12s %6s %6s %6s %8s\n", "stage", "mean(s)", "mul", "rot",
                "add", "rescale");
  out += buf;
  for (const auto& s : stages) {
    std::snprintf(buf, sizeof buf, "%-18s %12.4f %6llu %6llu %6llu %8llu\n", s.name.c_str(),
                  s.mean_seconds, static_cast<unsigned long long>(s.ops.mul),
                  static_cast<unsigned long long>(s.ops.rotate),
                  static_cast<unsigned long long>(s.ops.add + s.ops.sub),
                  static_cast<unsigned long long>(s.ops.rescale));
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "identify mean %.4f s (reference %.3f s), enroll %.2f s\n",
                identify_mean_seconds, kReferenceLatencySeconds, enroll_seconds);
  out += buf;
  std::snprintf(buf, sizeof buf, "matched %zu/%zu, correct %zu\n", matched, config.probes, correct);
  out += buf;
  out += "trend (extrapolated):\n";
  for (const auto& t : trend) {
    std::snprintf(buf, sizeof buf, "  n=%-6zu bins=%-4zu queue=%-5zu pres=%.4f s fine=%.4f s\n",
                  t.n, t.bins, t.queue, t.preselect_seconds, t.fine_seconds);
    out += buf;
  }
  return out;
}

}  // namespace pfip::bench
