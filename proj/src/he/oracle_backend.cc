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

#include "pfip/he/oracle_backend.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <string>

#include "pfip/common/bytes.h"
#include "pfip/common/hash.h"

namespace pfip::he {
namespace {

constexpr char kMagic[] = "PFIP";
constexpr uint16_t kVersion = 1;
constexpr uint8_t kOracleCiphertextTag = 0x10;

struct OracleBody final : CipherBody {
  explicit OracleBody(SlotVector s) : slots(std::move(s)) {}
  SlotVector slots;
};

CipherHandle MakeHandle(SlotVector slots, int level, double scale, uint64_t id) {
  return CipherHandle(std::make_shared<const OracleBody>(std::move(slots)), level, scale, id);
}

class OracleEvaluator final : public Evaluator {
 public:
  OracleEvaluator(const BackendParams& params, std::vector<int> steps)
      : Evaluator(params), id_(OracleParamsId(params)), steps_(steps.begin(), steps.end()) {
    for (int s : steps_) {
      Check(s > 0 && s < static_cast<int>(params.slot_count()), ErrorCode::kInvalidArgument,
            "rotation step " + std::to_string(s) + " outside (0, S)");
    }
  }

  uint64_t params_id() const override { return id_; }
  std::string_view backend_name() const override { return "oracle"; }
  bool HasRotationKey(int steps) const override { return steps_.contains(steps); }

  std::vector<uint8_t> Serialize(const CipherHandle& c) const override {
    CheckOwned(c);
    const auto& slots = c.body_as<OracleBody>().slots;
    ByteWriter w;
    w.PutRaw(std::string_view(kMagic, 4));
    w.PutU16(kVersion);
    w.PutU8(kOracleCiphertextTag);
    w.PutU64(id_);
    w.PutU32(static_cast<uint32_t>(c.level()));
    w.PutF64(c.scale());
    w.PutU64(slots.size());
    for (double x : slots) w.PutF64(x);
    return std::move(w).Take();
  }

  CipherHandle Deserialize(std::span<const uint8_t> bytes) const override {
    ByteReader r(bytes);
    auto magic = r.GetRaw(4);
    Check(std::equal(magic.begin(), magic.end(), kMagic), ErrorCode::kBadMagic,
          "not a serialized ciphertext");
    Check(r.GetU16() == kVersion, ErrorCode::kBadVersion, "unsupported format version");
    Check(r.GetU8() == kOracleCiphertextTag, ErrorCode::kParamsMismatch,
          "object is not an oracle ciphertext");
    Check(r.GetU64() == id_, ErrorCode::kParamsMismatch, "params hash mismatch");
    const int level = static_cast<int>(r.GetU32());
    const double scale = r.GetF64();
    const uint64_t n = r.GetU64();
    Check(n == params().slot_count(), ErrorCode::kCorrupt, "slot count mismatch");
    Check(level >= 0 && level <= params().top_level(), ErrorCode::kCorrupt, "bad level");
    SlotVector slots(n);
    for (auto& x : slots) x = r.GetF64();
    Check(r.done(), ErrorCode::kCorrupt, "trailing bytes after ciphertext");
    return MakeHandle(std::move(slots), level, scale, id_);
  }

 protected:
  CipherHandle DoAdd(const CipherHandle& a, const CipherHandle& b, bool subtract) const override {
    const auto& x = a.body_as<OracleBody>().slots;
    const auto& y = b.body_as<OracleBody>().slots;
    SlotVector out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = subtract ? x[i] - y[i] : x[i] + y[i];
    return MakeHandle(std::move(out), a.level(), a.scale(), id_);
  }

  CipherHandle DoMultiply(const CipherHandle& a, const CipherHandle& b) const override {
    const auto& x = a.body_as<OracleBody>().slots;
    const auto& y = b.body_as<OracleBody>().slots;
    SlotVector out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
    return MakeHandle(std::move(out), a.level(), a.scale() * b.scale(), id_);
  }

  CipherHandle DoRescale(const CipherHandle& a) const override {
    const int bits = params().coeff_modulus_bits[static_cast<size_t>(a.level())];
    return MakeHandle(a.body_as<OracleBody>().slots, a.level() - 1,
                      a.scale() / std::ldexp(1.0, bits), id_);
  }

  CipherHandle DoRotate(const CipherHandle& a, int steps) const override {
    const auto& x = a.body_as<OracleBody>().slots;
    SlotVector out(x.size());
    const size_t n = x.size();
    for (size_t j = 0; j < n; ++j) out[j] = x[(j + static_cast<size_t>(steps)) % n];
    return MakeHandle(std::move(out), a.level(), a.scale(), id_);
  }

  CipherHandle DoZero(int level) const override {
    return MakeHandle(SlotVector(params().slot_count(), 0.0), level,
                      params().nominal_scale(), id_);
  }

 private:
  uint64_t id_;
  std::set<int> steps_;
};

class OracleEncryptor final : public Encryptor {
 public:
  explicit OracleEncryptor(const BackendParams& params)
      : Encryptor(params), id_(OracleParamsId(params)) {}

 protected:
  CipherHandle DoEncrypt(std::span<const double> v) const override {
    return MakeHandle(SlotVector(v.begin(), v.end()), params().top_level(),
                      params().nominal_scale(), id_);
  }

 private:
  uint64_t id_;
};

class OracleDecryptor final : public Decryptor {
 public:
  OracleDecryptor(const BackendParams& params, DecryptMode mode)
      : Decryptor(params, mode), id_(OracleParamsId(params)) {}

 protected:
  uint64_t params_id() const override { return id_; }
  SlotVector DoDecrypt(const CipherHandle& c) const override {
    return c.body_as<OracleBody>().slots;
  }

 private:
  uint64_t id_;
};

}  // namespace

uint64_t OracleParamsId(const BackendParams& params) {
  ByteWriter w;
  w.PutRaw(std::string_view("oracle"));
  w.PutU64(params.poly_degree);
  for (int bits : params.coeff_modulus_bits) w.PutU32(static_cast<uint32_t>(bits));
  w.PutU32(static_cast<uint32_t>(params.scale_bits));
  return Fnv1a64(w.bytes());
}

Backend MakeOracleBackend(const BackendParams& params, std::vector<int> rotation_steps,
                          DecryptMode mode) {
  params.Validate();
  Backend b;
  b.kind = BackendKind::kOracle;
  b.evaluator = std::make_shared<OracleEvaluator>(params, std::move(rotation_steps));
  b.encryptor = std::make_shared<OracleEncryptor>(params);
  b.decryptor = std::make_shared<OracleDecryptor>(params, mode);
  return b;
}

}  // namespace pfip::he
