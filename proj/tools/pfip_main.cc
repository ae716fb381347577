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

// pfip: key generation, enrollment, identification and evaluation harness.

#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pfip/bench/dataset.h"
#include "pfip/bench/hit_rate.h"
#include "pfip/bench/timing.h"
#include "pfip/bench/workload.h"
#include "pfip/ckks/ckks_backend.h"
#include "pfip/ckks/rns_context.h"
#include "pfip/ckks/security.h"
#include "pfip/ckks/serialize.h"
#include "pfip/common/error.h"
#include "pfip/gallery/gallery.h"
#include "pfip/he/backend_factory.h"
#include "pfip/he/params.h"
#include "pfip/protocol/identify.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitConfig = 3;
constexpr int kExitCheckFailed = 4;

struct Common {
  std::string params = "divided-32768";
  std::string complete_params = "complete-8192";
  size_t d = 128;
  size_t m = 64;
  double p = 0.05;
  double tau = -1;
  std::string score_kind = "distance";
  std::string backend = "ckks";
  size_t threads = 1;
  uint64_t seed = 1;
  std::string out;
  bool baseline = false;
};

void AddGalleryOptions(CLI::App* cmd, Common& c) {
  cmd->add_option("--params", c.params, "Divided (preselection) parameter preset");
  cmd->add_option("--complete-params", c.complete_params, "Complete (fine match) parameter preset");
  cmd->add_option("--d", c.d, "Full feature dimension");
  cmd->add_option("--m", c.m, "Decomposed feature dimension");
  cmd->add_option("--p", c.p, "Penetration rate in (0, 1]");
  cmd->add_option("--tau", c.tau, "Squared-distance decision threshold");
  cmd->add_option("--score-kind", c.score_kind, "Preselection score: distance or inner");
  cmd->add_flag("--baseline", c.baseline, "Also keep width-d bins for exhaustive search");
}

void AddRuntimeOptions(CLI::App* cmd, Common& c) {
  cmd->add_option("--backend", c.backend, "ckks or oracle");
  cmd->add_option("--threads", c.threads, "Worker threads for bins and candidates");
  cmd->add_option("--seed", c.seed, "Seed for keys and synthetic data");
  cmd->add_option("--out", c.out, "Output path");
}

pfip::gallery::GalleryConfig MakeConfig(const Common& c) {
  pfip::gallery::GalleryConfig g;
  g.d = c.d;
  g.m = c.m;
  g.divided_params = c.params;
  g.complete_params = c.complete_params;
  g.penetration = c.p;
  if (c.tau > 0 || c.tau == 0) g.threshold = c.tau;
  g.score_kind = pfip::packing::ParseScoreKind(c.score_kind);
  g.with_baseline = c.baseline;
  g.Validate();
  return g;
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  pfip::Check(out.good(), pfip::ErrorCode::kIo, "cannot write " + path);
  out << text << '\n';
}

std::vector<uint8_t> ReadBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  pfip::Check(in.good(), pfip::ErrorCode::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteBytes(const fs::path& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  pfip::Check(out.good(), pfip::ErrorCode::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

// Backends for both parameter sets: loaded from a key directory for CKKS,
// rebuilt from the seed for the oracle.
std::pair<pfip::he::Backend, pfip::he::Backend> LoadBackends(const Common& c,
                                                             const pfip::gallery::GalleryConfig& g,
                                                             const std::string& keys_dir) {
  const auto kind = pfip::he::ParseBackendKind(c.backend);
  if (kind == pfip::he::BackendKind::kOracle) {
    return {pfip::he::MakeBackend(kind, pfip::he::Preset(g.divided_params),
                                  pfip::protocol::DividedRotationSteps(g), c.seed),
            pfip::he::MakeBackend(kind, pfip::he::Preset(g.complete_params),
                                  pfip::protocol::CompleteRotationSteps(g), c.seed)};
  }
  pfip::Check(!keys_dir.empty(), pfip::ErrorCode::kConfig, "--keys is required for the ckks backend");
  auto load = [&](const std::string& preset, const char* file) {
    auto ctx = pfip::ckks::RnsContext::Create(pfip::he::Preset(preset));
    auto keys = pfip::ckks::DeserializeKeySet(*ctx, ReadBytes(fs::path(keys_dir) / file));
    return pfip::ckks::MakeCkksBackend(ctx, keys);
  };
  return {load(g.divided_params, "divided.keys"), load(g.complete_params, "complete.keys")};
}

int RunKeygen(const Common& c) {
  Common cc = c;
  if (cc.tau < 0) cc.tau = 1;  // keys do not depend on the threshold
  auto g = MakeConfig(cc);
  pfip::Check(!c.out.empty(), pfip::ErrorCode::kConfig, "--out directory is required");
  fs::create_directories(c.out);
  ordered_json manifest;
  auto emit = [&](const std::string& preset, const std::vector<int>& steps, uint64_t seed,
                  const char* file) {
    auto params = pfip::he::Preset(preset);
    auto ctx = pfip::ckks::RnsContext::Create(params);
    auto keys = pfip::ckks::KeyGen(ctx, steps, seed);
    WriteBytes(fs::path(c.out) / file, pfip::ckks::SerializeKeySet(*ctx, keys));
    auto sec = pfip::ckks::CheckSecurity(params);
    manifest[file] = {{"params", preset}, {"rotation_steps", steps}, {"security", sec.summary}};
  };
  emit(g.divided_params, pfip::protocol::DividedRotationSteps(g), c.seed, "divided.keys");
  emit(g.complete_params, pfip::protocol::CompleteRotationSteps(g), c.seed ^ 0x5bd1e9955bd1e995ULL,
       "complete.keys");
  WriteText((fs::path(c.out) / "keys.json").string(), manifest.dump(2));
  std::cout << manifest.dump(2) << '\n';
  return kExitOk;
}

int RunEnroll(const Common& c, const std::string& keys, const std::string& gallery_dir,
              const std::string& input, const std::string& format) {
  pfip::Check(!gallery_dir.empty(), pfip::ErrorCode::kConfig, "--gallery is required");
  auto ds = pfip::bench::IngestEmbeddings(input, pfip::bench::ParseEmbeddingFormat(format));
  Common cc = c;
  cc.d = ds.d;
  auto cfg = MakeConfig(cc);
  auto [div, comp] = LoadBackends(c, cfg, keys);
  std::optional<pfip::gallery::Gallery> existing;
  if (fs::exists(fs::path(gallery_dir) / "manifest.json")) {
    existing.emplace(pfip::gallery::Load(gallery_dir, div.evaluator, comp.evaluator));
    cfg = existing->config();
  }
  auto roles = pfip::protocol::AssembleRoles(cfg, pfip::he::ParseBackendKind(c.backend), div, comp,
                                             c.threads, std::move(existing));
  pfip::protocol::DirectTransport transport;
  for (const auto& s : ds.enrolled) {
    pfip::protocol::Enroll(roles, s.subject, s.feature.values, transport);
  }
  pfip::gallery::Persist(roles.cs.gallery(), gallery_dir);
  ordered_json j{{"enrolled", ds.enrolled.size()},
                 {"gallery_size", roles.cs.gallery().size()},
                 {"bins", roles.cs.gallery().bins().size()},
                 {"counter", roles.cs.counter()}};
  WriteText(c.out, j.dump(2));
  return kExitOk;
}

int RunIdentify(const Common& c, const std::string& keys, const std::string& gallery_dir,
                const std::string& input, const std::string& format, bool exhaustive) {
  pfip::Check(!gallery_dir.empty(), pfip::ErrorCode::kConfig, "--gallery is required");
  auto ds = pfip::bench::IngestEmbeddings(input, pfip::bench::ParseEmbeddingFormat(format));
  // Parameter names come from the stored gallery.
  std::ifstream mf(fs::path(gallery_dir) / "manifest.json");
  pfip::Check(mf.good(), pfip::ErrorCode::kConfig, "no gallery at " + gallery_dir);
  auto stored = nlohmann::json::parse(mf, nullptr, false);
  pfip::Check(!stored.is_discarded() && stored.contains("config"), pfip::ErrorCode::kCorrupt,
              "unreadable gallery manifest");
  Common cc = c;
  cc.d = stored["config"]["d"].get<size_t>();
  cc.m = stored["config"]["m"].get<size_t>();
  cc.params = stored["config"]["divided_params"].get<std::string>();
  cc.complete_params = stored["config"]["complete_params"].get<std::string>();
  cc.baseline = stored["config"].value("with_baseline", false);
  if (cc.tau <= 0 && stored["config"]["threshold"].is_number()) {
    cc.tau = stored["config"]["threshold"].get<double>();
  }
  auto cfg = MakeConfig(cc);
  auto [div, comp] = LoadBackends(cc, cfg, keys);
  auto loaded = pfip::gallery::Load(gallery_dir, div.evaluator, comp.evaluator);
  auto roles = pfip::protocol::AssembleRoles(
      cfg, pfip::he::ParseBackendKind(c.backend), div, comp, c.threads, std::move(loaded),
      pfip::protocol::AsConfig{cfg.penetration, *cfg.threshold, cfg.score_kind});
  pfip::protocol::DirectTransport transport;
  ordered_json results = ordered_json::array();
  std::vector<const pfip::bench::Sample*> probes;
  for (const auto& s : ds.enrolled) probes.push_back(&s);
  for (const auto& s : ds.probes) probes.push_back(&s);
  for (const auto* s : probes) {
    auto r = exhaustive ? pfip::protocol::BaselineIdentify(roles, s->feature.values, transport)
                        : pfip::protocol::Identify(roles, s->feature.values, transport);
    ordered_json row{{"probe", s->subject},
                     {"match", r.decision.id ? ordered_json(*r.decision.id) : ordered_json(nullptr)},
                     {"score", std::isfinite(r.decision.score) ? ordered_json(r.decision.score)
                                                               : ordered_json(nullptr)},
                     {"reason", r.decision.reason},
                     {"trace", ordered_json::parse(r.trace.ToJson())}};
    results.push_back(std::move(row));
  }
  WriteText(c.out, results.dump(2));
  return kExitOk;
}

// Exact op-count and workload checks; returns false on any mismatch.
bool BenchChecks(const pfip::bench::TimingReport& r, std::ostream& log) {
  bool ok = true;
  for (const auto& row : pfip::bench::CompareWorkloadTable()) {
    if (!row.matches && !row.flagged) ok = false;
  }
  const auto* pre = r.stage("preselect");
  const auto* fine = r.stage("fine_match");
  const size_t log_m = static_cast<size_t>(std::countr_zero(r.config.gallery.m));
  const bool pre_ok = pre && pre->ops.mul == r.bins && pre->ops.rotate == r.bins * log_m;
  const bool fine_ok = fine && fine->ops.mul == r.queue;
  log << (pre_ok ? "PASS" : "FAIL") << " preselect ops: " << (pre ? pre->ops.mul : 0) << " mul, "
      << (pre ? pre->ops.rotate : 0) << " rotate for " << r.bins << " bins\n";
  log << (fine_ok ? "PASS" : "FAIL") << " fine-match ops: " << (fine ? fine->ops.mul : 0)
      << " mul for queue " << r.queue << "\n";
  return ok && pre_ok && fine_ok;
}

int RunBench(const Common& c, size_t n, size_t probes, double sigma, bool check, bool text) {
  pfip::bench::TimingConfig tc;
  Common cc = c;
  if (cc.tau < 0) cc.tau = 0.5;
  tc.gallery = MakeConfig(cc);
  tc.n = n;
  tc.probes = probes;
  tc.backend = pfip::he::ParseBackendKind(c.backend);
  tc.threads = c.threads;
  tc.seed = c.seed;
  tc.sigma = sigma;
  auto report = pfip::bench::BenchTiming(tc);
  WriteText(c.out, report.ToJson());
  if (text) std::cerr << report.ToText();
  if (check && !BenchChecks(report, std::cerr)) return kExitCheckFailed;
  return kExitOk;
}

std::vector<size_t> ParseSizes(const std::string& list) {
  std::vector<size_t> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoul(item));
    } catch (const std::exception&) {
      pfip::Fail(pfip::ErrorCode::kConfig, "bad size list '" + list + "'");
    }
  }
  return out;
}

int RunHitRate(const Common& c, const std::string& input, const std::string& format,
               size_t subjects, double sigma, const std::string& ms) {
  pfip::bench::Dataset ds =
      input.empty() ? pfip::bench::SynthDataset(subjects, 2, c.d, sigma, c.seed)
                    : pfip::bench::IngestEmbeddings(input, pfip::bench::ParseEmbeddingFormat(format));
  const auto grid = pfip::bench::PenetrationGrid();
  const auto kind = pfip::packing::ParseScoreKind(c.score_kind);
  ordered_json j;
  j["subjects"] = ds.enrolled.size();
  j["probes"] = ds.probes.size();
  j["d"] = ds.d;
  auto& curves = j["curves"] = ordered_json::array();
  for (size_t m : ParseSizes(ms)) {
    ordered_json cj;
    cj["m"] = m;
    ordered_json pts = ordered_json::array();
    for (const auto& row : pfip::bench::HitRateCurve(ds, m, grid, kind)) {
      pts.push_back({{"p", row.penetration}, {"hit_rate", row.hit_rate}});
    }
    cj["points"] = std::move(pts);
    for (double t : {0.99, 0.995, 1.0}) {
      char key[32];
      std::snprintf(key, sizeof key, "p_at_%g", t * 100);
      cj[key] = pfip::bench::MinPenetration(ds, m, t, grid, kind);
    }
    curves.push_back(std::move(cj));
  }
  WriteText(c.out, j.dump(2));
  return kExitOk;
}

int RunWorkload(const Common& c, size_t S, bool single, bool text) {
  if (single) {
    auto r = pfip::bench::WorkloadReduction(c.m, c.p, c.d, S);
    ordered_json j{{"m", r.m},
                   {"p", r.p},
                   {"d", r.d},
                   {"S", r.S},
                   {"remaining_percent", 100 * r.remaining_fraction},
                   {"baseline_percent", 100 * r.baseline_fraction},
                   {"printed_formula", r.printed_formula}};
    WriteText(c.out, j.dump(2));
    return kExitOk;
  }
  auto rows = pfip::bench::CompareWorkloadTable(S);
  WriteText(c.out, text ? pfip::bench::WorkloadText(rows, S) : pfip::bench::WorkloadJson(rows, S));
  return kExitOk;
}

int RunSynth(const Common& c, size_t subjects, size_t per_subject, double sigma,
             const std::string& format) {
  pfip::Check(!c.out.empty(), pfip::ErrorCode::kConfig, "--out is required");
  auto ds = pfip::bench::SynthDataset(subjects, per_subject, c.d, sigma, c.seed);
  if (pfip::bench::ParseEmbeddingFormat(format) == pfip::bench::EmbeddingFormat::kCsv) {
    pfip::bench::WriteCsv(ds, c.out);
  } else {
    pfip::bench::WriteRawF32(ds, c.out);
  }
  return kExitOk;
}

int RunIngest(const Common& c, const std::string& input, const std::string& format,
              const std::string& out_format) {
  auto ds = pfip::bench::IngestEmbeddings(input, pfip::bench::ParseEmbeddingFormat(format));
  if (!c.out.empty()) {
    if (pfip::bench::ParseEmbeddingFormat(out_format) == pfip::bench::EmbeddingFormat::kCsv) {
      pfip::bench::WriteCsv(ds, c.out);
    } else {
      pfip::bench::WriteRawF32(ds, c.out);
    }
  }
  ordered_json j{{"d", ds.d}, {"enrolled", ds.enrolled.size()}, {"probes", ds.probes.size()}};
  std::cout << j.dump(2) << '\n';
  return kExitOk;
}

int ExitCodeFor(pfip::ErrorCode code) {
  switch (code) {
    case pfip::ErrorCode::kParse:
      return kExitParse;
    case pfip::ErrorCode::kConfig:
    case pfip::ErrorCode::kInvalidArgument:
    case pfip::ErrorCode::kParamsMismatch:
      return kExitConfig;
    default:
      return kExitError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy-preserving face identification with preselection"};
  app.require_subcommand(1);
  Common c;
  std::string keys, gallery_dir, input, format = "csv", out_format = "csv", ms = "16,32,64";
  size_t n = 1000, probes = 3, subjects = 200, per_subject = 2, S = 16384;
  double sigma = 0.08, bench_sigma = 0.03;
  bool check = false, text = false, exhaustive = false;

  auto* keygen = app.add_subcommand("keygen", "Generate key sets for both parameter presets");
  AddGalleryOptions(keygen, c);
  AddRuntimeOptions(keygen, c);

  auto* enroll = app.add_subcommand("enroll", "Enroll embeddings into an encrypted gallery");
  AddGalleryOptions(enroll, c);
  AddRuntimeOptions(enroll, c);
  enroll->add_option("--keys", keys, "Key directory written by keygen");
  enroll->add_option("--gallery", gallery_dir, "Gallery directory")->required();
  enroll->add_option("--input", input, "Embedding file")->required();
  enroll->add_option("--format", format, "csv or raw-f32");

  auto* identify = app.add_subcommand("identify", "Identify probe embeddings against a gallery");
  AddGalleryOptions(identify, c);
  AddRuntimeOptions(identify, c);
  identify->add_option("--keys", keys, "Key directory written by keygen");
  identify->add_option("--gallery", gallery_dir, "Gallery directory")->required();
  identify->add_option("--input", input, "Probe embedding file")->required();
  identify->add_option("--format", format, "csv or raw-f32");
  identify->add_flag("--exhaustive", exhaustive, "Search the baseline bins without preselection");

  auto* bench = app.add_subcommand("bench", "Time identification on a synthetic gallery");
  AddGalleryOptions(bench, c);
  AddRuntimeOptions(bench, c);
  bench->add_option("--n", n, "Gallery size");
  bench->add_option("--probes", probes, "Probes to time");
  bench->add_option("--sigma", bench_sigma, "Synthetic noise level");
  bench->add_flag("--check", check, "Verify op counts and workload table; exit 4 on mismatch");
  bench->add_flag("--text", text, "Print a human-readable table to stderr");

  auto* hitrate = app.add_subcommand("hitrate", "Hit rate against penetration");
  AddGalleryOptions(hitrate, c);
  AddRuntimeOptions(hitrate, c);
  hitrate->add_option("--input", input, "Embedding file (synthetic data if omitted)");
  hitrate->add_option("--format", format, "csv or raw-f32");
  hitrate->add_option("--subjects", subjects, "Synthetic subjects");
  hitrate->add_option("--sigma", sigma, "Synthetic noise level");
  hitrate->add_option("--ms", ms, "Comma-separated decomposed dimensions");

  auto* workload = app.add_subcommand("workload", "Computational workload relative to exhaustive search");
  AddGalleryOptions(workload, c);
  AddRuntimeOptions(workload, c);
  workload->add_option("--S", S, "Slot count");
  workload->add_flag("--text", text, "Plain-text table");
  bool single = false;
  workload->add_flag("--single", single, "Report only the given --m, --p, --d");

  auto* synth = app.add_subcommand("synth", "Write a synthetic embedding dataset");
  AddGalleryOptions(synth, c);
  AddRuntimeOptions(synth, c);
  synth->add_option("--subjects", subjects, "Subjects");
  synth->add_option("--per-subject", per_subject, "Samples per subject");
  synth->add_option("--sigma", sigma, "Noise level");
  synth->add_option("--format", format, "csv or raw-f32");

  auto* ingest = app.add_subcommand("ingest", "Validate and convert an embedding file");
  AddRuntimeOptions(ingest, c);
  ingest->add_option("--input", input, "Embedding file")->required();
  ingest->add_option("--format", format, "csv or raw-f32");
  ingest->add_option("--out-format", out_format, "Format for --out");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*keygen) return RunKeygen(c);
    if (*enroll) return RunEnroll(c, keys, gallery_dir, input, format);
    if (*identify) return RunIdentify(c, keys, gallery_dir, input, format, exhaustive);
    if (*bench) return RunBench(c, n, probes, bench_sigma, check, text);
    if (*hitrate) return RunHitRate(c, input, format, subjects, sigma, ms);
    if (*workload) return RunWorkload(c, S, single, text);
    if (*synth) return RunSynth(c, subjects, per_subject, sigma, format);
    if (*ingest) return RunIngest(c, input, format, out_format);
  } catch (const pfip::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}
