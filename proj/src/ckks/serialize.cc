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

#include "pfip/ckks/serialize.h"

#include <algorithm>
#include <memory>
#include <string>

#include "pfip/ckks/ckks_backend.h"
#include "pfip/common/bytes.h"
#include "pfip/common/error.h"

namespace pfip::ckks {
namespace {

constexpr char kMagic[] = "PFIP";

void PutHeader(ByteWriter& w, const RnsContext& ctx, ObjectTag tag) {
  w.PutRaw(std::string_view(kMagic, 4));
  w.PutU16(kFormatVersion);
  w.PutU8(static_cast<uint8_t>(tag));
  w.PutU64(ctx.params_id());
}

void GetHeader(ByteReader& r, const RnsContext& ctx, ObjectTag tag) {
  auto magic = r.GetRaw(4);
  Check(std::equal(magic.begin(), magic.end(), kMagic), ErrorCode::kBadMagic,
        "bad magic");
  Check(r.GetU16() == kFormatVersion, ErrorCode::kBadVersion, "unsupported format version");
  const auto got = r.GetU8();
  Check(got == static_cast<uint8_t>(tag), ErrorCode::kParamsMismatch,
        "object tag " + std::to_string(got) + ", expected " +
            std::to_string(static_cast<int>(tag)));
  Check(r.GetU64() == ctx.params_id(), ErrorCode::kParamsMismatch,
        "params hash does not match the active context");
}

void PutPoly(ByteWriter& w, const RnsPoly& p) {
  w.PutU32(static_cast<uint32_t>(p.num_limbs()));
  for (uint32_t m : p.moduli) w.PutU32(m);
  w.PutWords(p.data);
}

RnsPoly GetPoly(ByteReader& r, const RnsContext& ctx) {
  const uint32_t limbs = r.GetU32();
  Check(limbs >= 1 && limbs <= ctx.num_moduli(), ErrorCode::kCorrupt, "bad limb count");
  std::vector<uint32_t> moduli(limbs);
  for (auto& m : moduli) {
    m = r.GetU32();
    Check(m < ctx.num_moduli(), ErrorCode::kCorrupt, "bad modulus index");
  }
  RnsPoly p(ctx.n(), std::move(moduli));
  r.GetWords(p.data);
  for (size_t l = 0; l < p.num_limbs(); ++l) {
    const uint64_t q = ctx.modulus(p.moduli[l]).value();
    for (uint64_t x : p.limb(l)) Check(x < q, ErrorCode::kCorrupt, "coefficient out of range");
  }
  return p;
}

void PutKeySwitchKey(ByteWriter& w, const KeySwitchKey& k) {
  w.PutU32(static_cast<uint32_t>(k.b.size()));
  for (size_t i = 0; i < k.b.size(); ++i) {
    PutPoly(w, k.b[i]);
    PutPoly(w, k.a[i]);
  }
}

KeySwitchKey GetKeySwitchKey(ByteReader& r, const RnsContext& ctx) {
  KeySwitchKey k;
  const uint32_t digits = r.GetU32();
  Check(digits == static_cast<uint32_t>(ctx.top_level() + 1), ErrorCode::kCorrupt,
        "bad key-switching digit count");
  for (uint32_t i = 0; i < digits; ++i) {
    k.b.push_back(GetPoly(r, ctx));
    k.a.push_back(GetPoly(r, ctx));
  }
  return k;
}

void Finish(const ByteReader& r) {
  Check(r.done(), ErrorCode::kCorrupt, "trailing bytes after object");
}

}  // namespace

std::vector<uint8_t> SerializeCiphertext(const RnsContext& ctx, const he::CipherHandle& c) {
  const auto& body = c.body_as<Ciphertext>();
  ByteWriter w;
  PutHeader(w, ctx, ObjectTag::kCiphertext);
  w.PutU32(static_cast<uint32_t>(c.level()));
  w.PutF64(c.scale());
  w.PutU32(2);
  PutPoly(w, body.c0);
  PutPoly(w, body.c1);
  return std::move(w).Take();
}

he::CipherHandle DeserializeCiphertext(const RnsContext& ctx, std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  GetHeader(r, ctx, ObjectTag::kCiphertext);
  const auto level = static_cast<int>(r.GetU32());
  const double scale = r.GetF64();
  Check(level >= 0 && level <= ctx.top_level(), ErrorCode::kCorrupt, "bad level");
  Check(scale > 0, ErrorCode::kCorrupt, "bad scale");
  Check(r.GetU32() == 2, ErrorCode::kCorrupt, "expected two components");
  auto body = std::make_shared<Ciphertext>();
  body->c0 = GetPoly(r, ctx);
  body->c1 = GetPoly(r, ctx);
  Finish(r);
  const auto expected = ctx.LevelModuli(level, false);
  Check(body->c0.moduli == expected && body->c1.moduli == expected, ErrorCode::kCorrupt,
        "component basis does not match level");
  return he::CipherHandle(std::move(body), level, scale, ctx.params_id());
}

std::vector<uint8_t> SerializePublicKey(const RnsContext& ctx, const PublicKey& key) {
  ByteWriter w;
  PutHeader(w, ctx, ObjectTag::kPublicKey);
  PutPoly(w, key.b);
  PutPoly(w, key.a);
  return std::move(w).Take();
}

PublicKey DeserializePublicKey(const RnsContext& ctx, std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  GetHeader(r, ctx, ObjectTag::kPublicKey);
  PublicKey k;
  k.b = GetPoly(r, ctx);
  k.a = GetPoly(r, ctx);
  Finish(r);
  return k;
}

std::vector<uint8_t> SerializeSecretKey(const RnsContext& ctx, const SecretKey& key) {
  ByteWriter w;
  PutHeader(w, ctx, ObjectTag::kSecretKey);
  PutPoly(w, key.s);
  return std::move(w).Take();
}

SecretKey DeserializeSecretKey(const RnsContext& ctx, std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  GetHeader(r, ctx, ObjectTag::kSecretKey);
  SecretKey k;
  k.s = GetPoly(r, ctx);
  Finish(r);
  return k;
}

std::vector<uint8_t> SerializeEvaluationKeys(const RnsContext& ctx, const EvaluationKeys& keys) {
  ByteWriter w;
  PutHeader(w, ctx, ObjectTag::kRelinKey);
  PutKeySwitchKey(w, keys.relin);
  w.PutU8(static_cast<uint8_t>(ObjectTag::kGaloisKeys));
  w.PutU32(static_cast<uint32_t>(keys.galois.size()));
  for (const auto& [step, key] : keys.galois) {
    w.PutU32(static_cast<uint32_t>(step));
    PutKeySwitchKey(w, key);
  }
  return std::move(w).Take();
}

EvaluationKeys DeserializeEvaluationKeys(const RnsContext& ctx, std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  GetHeader(r, ctx, ObjectTag::kRelinKey);
  EvaluationKeys keys;
  keys.relin = GetKeySwitchKey(r, ctx);
  Check(r.GetU8() == static_cast<uint8_t>(ObjectTag::kGaloisKeys), ErrorCode::kCorrupt,
        "missing Galois key section");
  const uint32_t count = r.GetU32();
  for (uint32_t i = 0; i < count; ++i) {
    const auto step = static_cast<int>(r.GetU32());
    Check(step > 0 && static_cast<size_t>(step) < ctx.n() / 2, ErrorCode::kCorrupt,
          "bad rotation step");
    keys.galois.emplace(step, GetKeySwitchKey(r, ctx));
  }
  Finish(r);
  return keys;
}

std::vector<uint8_t> SerializeKeySet(const RnsContext& ctx, const KeySet& keys) {
  ByteWriter w;
  PutHeader(w, ctx, ObjectTag::kKeySet);
  w.PutU64(keys.seed);
  w.PutBlob(SerializeSecretKey(ctx, *keys.secret));
  w.PutBlob(SerializePublicKey(ctx, *keys.pub));
  w.PutBlob(SerializeEvaluationKeys(ctx, *keys.eval));
  return std::move(w).Take();
}

KeySet DeserializeKeySet(const RnsContext& ctx, std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  GetHeader(r, ctx, ObjectTag::kKeySet);
  KeySet keys;
  keys.seed = r.GetU64();
  keys.secret = std::make_shared<SecretKey>(DeserializeSecretKey(ctx, r.GetBlob()));
  keys.pub = std::make_shared<PublicKey>(DeserializePublicKey(ctx, r.GetBlob()));
  keys.eval = std::make_shared<EvaluationKeys>(DeserializeEvaluationKeys(ctx, r.GetBlob()));
  Finish(r);
  return keys;
}

}  // namespace pfip::ckks
