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

#ifndef PFIP_COMMON_HASH_H_
#define PFIP_COMMON_HASH_H_

#include <cstdint>
#include <span>
#include <string>

namespace pfip {

// 64-bit FNV-1a; used for parameter fingerprints, not for integrity.
uint64_t Fnv1a64(std::span<const uint8_t> bytes, uint64_t seed = 0xcbf29ce484222325ULL);

// Lowercase hex SHA-256 digest.
std::string Sha256Hex(std::span<const uint8_t> bytes);

}  // namespace pfip

#endif  // PFIP_COMMON_HASH_H_
