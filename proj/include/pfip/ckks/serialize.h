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

#ifndef PFIP_CKKS_SERIALIZE_H_
#define PFIP_CKKS_SERIALIZE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "pfip/ckks/keys.h"
#include "pfip/ckks/rns_context.h"
#include "pfip/he/backend.h"

namespace pfip::ckks {

// Binary layout shared by every object:
//   "PFIP" | u16 format version | u8 object tag | u64 params hash | body
// Polynomials are written as u32 limb count, u32 modulus index per limb, then
// the RNS coefficient words as little-endian u64, limb by limb.
inline constexpr uint16_t kFormatVersion = 1;

enum class ObjectTag : uint8_t {
  kCiphertext = 1,
  kPublicKey = 2,
  kSecretKey = 3,
  kRelinKey = 4,
  kGaloisKeys = 5,
  kKeySet = 6,
};

std::vector<uint8_t> SerializeCiphertext(const RnsContext& ctx, const he::CipherHandle& c);
he::CipherHandle DeserializeCiphertext(const RnsContext& ctx, std::span<const uint8_t> bytes);

std::vector<uint8_t> SerializePublicKey(const RnsContext& ctx, const PublicKey& key);
PublicKey DeserializePublicKey(const RnsContext& ctx, std::span<const uint8_t> bytes);

std::vector<uint8_t> SerializeSecretKey(const RnsContext& ctx, const SecretKey& key);
SecretKey DeserializeSecretKey(const RnsContext& ctx, std::span<const uint8_t> bytes);

std::vector<uint8_t> SerializeEvaluationKeys(const RnsContext& ctx, const EvaluationKeys& keys);
EvaluationKeys DeserializeEvaluationKeys(const RnsContext& ctx, std::span<const uint8_t> bytes);

std::vector<uint8_t> SerializeKeySet(const RnsContext& ctx, const KeySet& keys);
KeySet DeserializeKeySet(const RnsContext& ctx, std::span<const uint8_t> bytes);

}  // namespace pfip::ckks

#endif  // PFIP_CKKS_SERIALIZE_H_
