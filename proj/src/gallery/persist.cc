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

#include <fstream>
#include <iterator>
#include <string>

#include "json.hpp"
#include "pfip/common/error.h"
#include "pfip/common/hash.h"
#include "pfip/gallery/gallery.h"

namespace pfip::gallery {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kManifestVersion = 1;

void WriteFile(const fs::path& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  Check(out.good(), ErrorCode::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  Check(out.good(), ErrorCode::kIo, "short write to " + path.string());
}

std::vector<uint8_t> ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  Check(in.good(), ErrorCode::kIo, "cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json ConfigToJson(const GalleryConfig& c) {
  return json{{"d", c.d},
              {"m", c.m},
              {"divided_params", c.divided_params},
              {"complete_params", c.complete_params},
              {"penetration", c.penetration},
              {"threshold", c.threshold ? json(*c.threshold) : json(nullptr)},
              {"score_kind", std::string(packing::ScoreKindName(c.score_kind))},
              {"with_baseline", c.with_baseline}};
}

GalleryConfig ConfigFromJson(const json& j) {
  GalleryConfig c;
  c.d = j.at("d").get<size_t>();
  c.m = j.at("m").get<size_t>();
  c.divided_params = j.at("divided_params").get<std::string>();
  c.complete_params = j.at("complete_params").get<std::string>();
  c.penetration = j.at("penetration").get<double>();
  if (!j.at("threshold").is_null()) c.threshold = j.at("threshold").get<double>();
  c.score_kind = packing::ParseScoreKind(j.at("score_kind").get<std::string>());
  c.with_baseline = j.value("with_baseline", false);
  return c;
}

json StoreToJson(const PackedStore& store, const he::Evaluator& ev, const fs::path& dir,
                 const std::string& prefix) {
  json bins = json::array();
  for (size_t i = 0; i < store.bins().size(); ++i) {
    const Bin& bin = store.bins()[i];
    const std::string file = prefix + "_" + std::to_string(i) + ".ct";
    const auto bytes = ev.Serialize(bin.ct);
    WriteFile(dir / file, bytes);
    bins.push_back({{"file", file},
                    {"hash", Sha256Hex(bytes)},
                    {"occupancy", bin.occupancy},
                    {"slot_map", bin.slot_map}});
  }
  return bins;
}

he::CipherHandle LoadCipher(const he::Evaluator& ev, const fs::path& dir, const json& entry) {
  const auto file = entry.at("file").get<std::string>();
  const auto bytes = ReadFile(dir / file);
  Check(Sha256Hex(bytes) == entry.at("hash").get<std::string>(), ErrorCode::kCorrupt,
        "hash mismatch for " + file);
  return ev.Deserialize(bytes);
}

std::vector<Bin> StoreFromJson(const json& bins, const he::Evaluator& ev, const fs::path& dir) {
  std::vector<Bin> out;
  for (const auto& entry : bins) {
    Bin bin;
    bin.ct = LoadCipher(ev, dir, entry);
    bin.occupancy = entry.at("occupancy").get<size_t>();
    bin.slot_map = entry.at("slot_map").get<std::vector<TemplateId>>();
    out.push_back(std::move(bin));
  }
  return out;
}

}  // namespace

void Persist(const Gallery& g, const fs::path& dir) {
  fs::create_directories(dir);
  json manifest;
  manifest["version"] = kManifestVersion;
  manifest["backend"] = std::string(g.divided_evaluator().backend_name());
  manifest["config"] = ConfigToJson(g.config());
  manifest["bins"] = StoreToJson(g.divided_store(), g.divided_evaluator(), dir, "bin");
  manifest["counter"] = g.counter();
  json complete = json::array();
  size_t index = 0;
  for (const auto& [id, ct] : g.complete()) {
    const std::string file = "complete_" + std::to_string(index++) + ".ct";
    const auto bytes = g.complete_evaluator().Serialize(ct);
    WriteFile(dir / file, bytes);
    complete.push_back({{"id", id}, {"file", file}, {"hash", Sha256Hex(bytes)}});
  }
  manifest["complete"] = std::move(complete);
  if (const auto& baseline = g.baseline_store()) {
    manifest["baseline"] = {
        {"bins", StoreToJson(*baseline, g.divided_evaluator(), dir, "baseline")},
        {"counter", baseline->counter()}};
  }
  const std::string text = manifest.dump(2) + "\n";
  WriteFile(dir / "manifest.json", std::vector<uint8_t>(text.begin(), text.end()));
}

Gallery Load(const fs::path& dir, std::shared_ptr<const he::Evaluator> divided,
             std::shared_ptr<const he::Evaluator> complete) {
  const auto raw = ReadFile(dir / "manifest.json");
  json manifest;
  try {
    manifest = json::parse(raw.begin(), raw.end());
  } catch (const json::exception& e) {
    Fail(ErrorCode::kCorrupt, std::string("unreadable manifest: ") + e.what());
  }
  try {
    Check(manifest.at("version").get<int>() == kManifestVersion, ErrorCode::kBadVersion,
          "unsupported manifest version");
    Check(manifest.at("backend").get<std::string>() == divided->backend_name(),
          ErrorCode::kParamsMismatch, "gallery was written by another backend");
    GalleryConfig config = ConfigFromJson(manifest.at("config"));
    Check(config.divided_params == divided->params().name, ErrorCode::kParamsMismatch,
          "manifest divided params '" + config.divided_params + "' vs active '" +
              divided->params().name + "'");
    Check(config.complete_params == complete->params().name, ErrorCode::kParamsMismatch,
          "manifest complete params '" + config.complete_params + "' vs active '" +
              complete->params().name + "'");
    Gallery g(config, divided, complete);
    auto bins = StoreFromJson(manifest.at("bins"), *divided, dir);
    std::map<TemplateId, he::CipherHandle> cts;
    for (const auto& entry : manifest.at("complete")) {
      cts.emplace(entry.at("id").get<std::string>(), LoadCipher(*complete, dir, entry));
    }
    std::optional<std::pair<std::vector<Bin>, size_t>> baseline;
    if (manifest.contains("baseline")) {
      const auto& b = manifest["baseline"];
      baseline.emplace(StoreFromJson(b.at("bins"), *divided, dir), b.at("counter").get<size_t>());
    }
    g.Restore(std::move(bins), manifest.at("counter").get<size_t>(), std::move(cts),
              std::move(baseline));
    return g;
  } catch (const json::exception& e) {
    Fail(ErrorCode::kCorrupt, std::string("malformed manifest: ") + e.what());
  }
}

}  // namespace pfip::gallery
