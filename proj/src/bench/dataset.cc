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

#include "pfip/bench/dataset.h"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"
#include "pfip/common/error.h"

namespace pfip::bench {
namespace {

std::string SubjectName(size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "s%05zu", i);
  return buf;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void ParseFail(size_t line, const std::string& msg) {
  Fail(ErrorCode::kParse, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace

Dataset SynthDataset(size_t subjects, size_t per_subject, size_t d, double sigma, uint64_t seed) {
  Check(subjects > 0 && per_subject > 0, ErrorCode::kInvalidArgument, "empty dataset requested");
  Check(std::has_single_bit(d), ErrorCode::kInvalidArgument, "d must be a power of two");
  Check(sigma >= 0 && std::isfinite(sigma), ErrorCode::kInvalidArgument, "sigma must be >= 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  Dataset ds;
  ds.d = d;
  std::vector<double> center(d), sample(d);
  for (size_t s = 0; s < subjects; ++s) {
    for (auto& c : center) c = unit(rng);
    center = packing::Normalize(center).values;
    for (size_t k = 0; k < per_subject; ++k) {
      for (size_t i = 0; i < d; ++i) sample[i] = center[i] + sigma * unit(rng);
      Sample smp{SubjectName(s), packing::Normalize(sample)};
      (k == 0 ? ds.enrolled : ds.probes).push_back(std::move(smp));
    }
  }
  return ds;
}

Dataset FromRows(std::vector<std::pair<std::string, std::vector<double>>> rows) {
  Check(!rows.empty(), ErrorCode::kEmpty, "no embeddings");
  Dataset ds;
  ds.d = rows.front().second.size();
  std::map<std::string, bool> seen;
  for (auto& [subject, raw] : rows) {
    Check(raw.size() == ds.d, ErrorCode::kParse, "inconsistent feature dimension");
    Sample s{subject, packing::Normalize(raw)};
    if (seen.emplace(subject, true).second) {
      ds.enrolled.push_back(std::move(s));
    } else {
      ds.probes.push_back(std::move(s));
    }
  }
  return ds;
}

EmbeddingFormat ParseEmbeddingFormat(std::string_view name) {
  if (name == "csv") return EmbeddingFormat::kCsv;
  if (name == "raw-f32" || name == "raw") return EmbeddingFormat::kRawF32;
  Fail(ErrorCode::kConfig, "unknown embedding format '" + std::string(name) + "'");
}

namespace {

Dataset IngestCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  Check(in.good(), ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::pair<std::string, std::vector<double>>> rows;
  std::string line;
  size_t lineno = 0;
  size_t d = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = Trim(line);
    if (view.empty() || view.front() == '#') continue;
    std::vector<std::string_view> fields;
    size_t start = 0;
    while (true) {
      size_t comma = view.find(',', start);
      fields.push_back(Trim(view.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() < 2) ParseFail(lineno, "expected subject id followed by features");
    if (fields[0].empty()) ParseFail(lineno, "empty subject id");
    std::vector<double> values;
    values.reserve(fields.size() - 1);
    for (size_t i = 1; i < fields.size(); ++i) {
      double v = 0;
      auto f = fields[i];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        ParseFail(lineno, "field " + std::to_string(i + 1) + " is not a number");
      }
      if (!std::isfinite(v)) ParseFail(lineno, "non-finite value in field " + std::to_string(i + 1));
      values.push_back(v);
    }
    if (d == 0) d = values.size();
    if (values.size() != d) {
      ParseFail(lineno, "expected " + std::to_string(d) + " features, got " +
                            std::to_string(values.size()));
    }
    rows.emplace_back(std::string(fields[0]), std::move(values));
  }
  Check(!rows.empty(), ErrorCode::kParse, path.string() + ": no embeddings");
  return FromRows(std::move(rows));
}

std::filesystem::path SidecarPath(const std::filesystem::path& path) {
  return path.string() + ".json";
}

Dataset IngestRaw(const std::filesystem::path& path) {
  std::ifstream meta_in(SidecarPath(path));
  Check(meta_in.good(), ErrorCode::kIo, "cannot open manifest " + SidecarPath(path).string());
  nlohmann::json meta;
  try {
    meta_in >> meta;
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, "manifest: " + std::string(e.what()));
  }
  size_t d = 0, count = 0;
  std::vector<std::string> ids;
  try {
    d = meta.at("d").get<size_t>();
    count = meta.at("count").get<size_t>();
    ids = meta.at("ids").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, "manifest: " + std::string(e.what()));
  }
  Check(d > 0, ErrorCode::kParse, "manifest: d must be positive");
  Check(ids.size() == count, ErrorCode::kParse, "manifest: ids and count disagree");

  std::ifstream in(path, std::ios::binary);
  Check(in.good(), ErrorCode::kIo, "cannot open " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Check(raw.size() == count * d * 4, ErrorCode::kParse,
        "expected " + std::to_string(count * d * 4) + " bytes of records, got " +
            std::to_string(raw.size()));
  std::vector<std::pair<std::string, std::vector<double>>> rows;
  rows.reserve(count);
  for (size_t r = 0; r < count; ++r) {
    std::vector<double> values(d);
    for (size_t i = 0; i < d; ++i) {
      uint32_t bits = 0;
      for (int b = 0; b < 4; ++b) {
        bits |= static_cast<uint32_t>(static_cast<uint8_t>(raw[(r * d + i) * 4 + b])) << (8 * b);
      }
      float v = std::bit_cast<float>(bits);
      Check(std::isfinite(v), ErrorCode::kParse,
            "record " + std::to_string(r + 1) + ": non-finite value");
      values[i] = v;
    }
    rows.emplace_back(ids[r], std::move(values));
  }
  Check(!rows.empty(), ErrorCode::kParse, path.string() + ": no embeddings");
  return FromRows(std::move(rows));
}

std::vector<const Sample*> AllSamples(const Dataset& ds) {
  std::vector<const Sample*> out;
  for (const auto& s : ds.enrolled) out.push_back(&s);
  for (const auto& s : ds.probes) out.push_back(&s);
  return out;
}

}  // namespace

Dataset IngestEmbeddings(const std::filesystem::path& path, EmbeddingFormat format) {
  return format == EmbeddingFormat::kCsv ? IngestCsv(path) : IngestRaw(path);
}

void WriteCsv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path);
  Check(out.good(), ErrorCode::kIo, "cannot write " + path.string());
  out << std::setprecision(17);
  for (const Sample* s : AllSamples(ds)) {
    out << s->subject;
    // Values go through float so CSV and raw-f32 exports ingest identically.
    for (double v : s->feature.values) out << ',' << static_cast<double>(static_cast<float>(v));
    out << '\n';
  }
}

void WriteRawF32(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  Check(out.good(), ErrorCode::kIo, "cannot write " + path.string());
  nlohmann::json meta;
  std::vector<std::string> ids;
  for (const Sample* s : AllSamples(ds)) {
    ids.push_back(s->subject);
    for (double v : s->feature.values) {
      uint32_t bits = std::bit_cast<uint32_t>(static_cast<float>(v));
      for (int b = 0; b < 4; ++b) out.put(static_cast<char>(bits >> (8 * b)));
    }
  }
  meta["d"] = ds.d;
  meta["count"] = ids.size();
  meta["ids"] = ids;
  std::ofstream m(SidecarPath(path));
  Check(m.good(), ErrorCode::kIo, "cannot write manifest");
  m << meta.dump(2) << '\n';
}

}  // namespace pfip::bench
