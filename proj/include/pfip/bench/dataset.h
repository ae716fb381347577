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

#ifndef PFIP_BENCH_DATASET_H_
#define PFIP_BENCH_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pfip/packing/packing.h"

namespace pfip::bench {

struct Sample {
  std::string subject;
  packing::FeatureVector feature;
  bool operator==(const Sample& o) const {
    return subject == o.subject && feature.values == o.feature.values;
  }
};

// Mated-pair split: one enrolled feature per subject, probes are further
// features of enrolled subjects.
struct Dataset {
  size_t d = 0;
  std::vector<Sample> enrolled;
  std::vector<Sample> probes;
  bool operator==(const Dataset&) const = default;
};

// Each subject gets a random unit center; every sample is
// normalize(center + N(0, sigma^2) per coordinate). The first sample of each
// subject is enrolled, the rest become probes.
Dataset SynthDataset(size_t subjects, size_t per_subject, size_t d, double sigma, uint64_t seed);

// Builds a dataset from (subject, raw feature) rows in file order: the first
// row of a subject is enrolled, later rows are probes. Features are
// normalized.
Dataset FromRows(std::vector<std::pair<std::string, std::vector<double>>> rows);

enum class EmbeddingFormat { kCsv, kRawF32 };

EmbeddingFormat ParseEmbeddingFormat(std::string_view name);

// CSV: one row per sample, `subject_id,f1,...,fd`. Blank lines and lines
// starting with '#' are skipped. Raw: flat little-endian f32 records with a
// JSON sidecar {"d": .., "count": .., "ids": [...]} at `<path>.json`.
// Malformed input raises kParse with the offending line (CSV) or record.
Dataset IngestEmbeddings(const std::filesystem::path& path, EmbeddingFormat format);

// Writes enrolled then probe samples, in order.
void WriteCsv(const Dataset& ds, const std::filesystem::path& path);
void WriteRawF32(const Dataset& ds, const std::filesystem::path& path);

}  // namespace pfip::bench

#endif  // PFIP_BENCH_DATASET_H_
