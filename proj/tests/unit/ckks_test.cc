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

#include <gtest/gtest.h>

#include "pfip/ckks/ckks_backend.h"
#include "pfip/ckks/keys.h"
#include "pfip/ckks/rns_context.h"
#include "pfip/ckks/security.h"
#include "pfip/ckks/serialize.h"
#include "pfip/common/error.h"
#include "pfip/he/oracle_backend.h"
#include "support/test_support.h"

namespace pfip::ckks {
namespace {

using testing::MaxAbsDiff;
using testing::TestRng;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kIo;
}

TEST(CkksParamsTest, PresetsMatchConfiguredChain) {
  auto div = he::Preset("divided-32768");
  auto comp = he::Preset("complete-8192");
  EXPECT_EQ(div.poly_degree, 32768u);
  EXPECT_EQ(comp.poly_degree, 8192u);
  for (const auto* p : {&div, &comp}) {
    EXPECT_EQ(p->coeff_modulus_bits, (std::vector<int>{40, 30, 40}));
    EXPECT_EQ(p->scale_bits, 30);
    EXPECT_EQ(p->logq(), 110);
    EXPECT_EQ(p->top_level(), 1);
  }
  EXPECT_EQ(div.slot_count(), 16384u);
  EXPECT_EQ(CodeOf([] { he::Preset("divided-999"); }), ErrorCode::kConfig);
}

TEST(CkksParamsTest, PrimesAreNttFriendlyWithRequestedSizes) {
  for (const char* name : {"divided-32768", "complete-8192"}) {
    auto ctx = RnsContext::Create(he::Preset(name));
    const auto primes = ctx->primes();
    ASSERT_EQ(primes.size(), 3u);
    const int bits[] = {40, 30, 40};
    for (size_t i = 0; i < 3; ++i) {
      EXPECT_TRUE(IsPrime(primes[i]));
      EXPECT_EQ(primes[i] % (2 * ctx->n()), 1u);
      EXPECT_EQ(std::bit_width(primes[i]), bits[i]);
    }
    EXPECT_NE(primes[0], primes[2]);
  }
}

TEST(CkksParamsTest, ToyDegreesValidated) {
  EXPECT_NO_THROW(he::ToyParams(8).Validate());
  EXPECT_THROW(he::ToyParams(4).Validate(), Error);
  EXPECT_THROW(he::ToyParams(48).Validate(), Error);
}

TEST(KeyGenTest, ToyKeysRoundTripZeros) {
  auto ctx = RnsContext::Create(he::ToyParams(32, {30, 30, 30}));
  auto keys = KeyGen(ctx, {1, 2, 4, 8}, 5);
  auto b = MakeCkksBackend(ctx, keys);
  auto out = b.decryptor->Decrypt(b.encryptor->Encrypt(std::vector<double>(16, 0.0)));
  for (double x : out) EXPECT_LT(std::abs(x), 1e-6);
}

TEST(KeyGenTest, SecretIsTernaryAndGaloisSetIsExact) {
  auto ctx = RnsContext::Create(he::ToyParams(64));
  auto keys = KeyGen(ctx, {1, 4, 16}, 6);
  for (int64_t c : SecretKeyCoefficients(*ctx, *keys.secret)) {
    EXPECT_TRUE(c == -1 || c == 0 || c == 1);
  }
  std::vector<int> steps;
  for (const auto& [s, _] : keys.eval->galois) steps.push_back(s);
  EXPECT_EQ(steps, (std::vector<int>{1, 4, 16}));
}

TEST(KeyGenTest, RejectsStepsOutsideSlotRange) {
  auto ctx = RnsContext::Create(he::ToyParams(32));
  EXPECT_THROW(KeyGen(ctx, {0}, 1), Error);
  EXPECT_THROW(KeyGen(ctx, {16}, 1), Error);
  EXPECT_THROW(KeyGen(ctx, {-1}, 1), Error);
}

TEST(KeyGenTest, DeterministicUnderSeed) {
  auto ctx = RnsContext::Create(he::ToyParams(64));
  auto a = SerializeKeySet(*ctx, KeyGen(ctx, {1, 2}, 42));
  auto b = SerializeKeySet(*ctx, KeyGen(ctx, {1, 2}, 42));
  auto c = SerializeKeySet(*ctx, KeyGen(ctx, {1, 2}, 43));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(KeyGenTest, PresetHasFourteenGaloisKeys) {
  auto params = he::Preset("divided-32768");
  auto ctx = RnsContext::Create(params);
  auto keys = KeyGen(ctx, he::PowerOfTwoSteps(params.slot_count()), 1);
  EXPECT_EQ(keys.eval->galois.size(), 14u);
}

TEST(CkksTest, RescaleDividesByDroppedPrime) {
  for (const char* name : {"divided-32768", "complete-8192"}) {
    auto params = he::Preset(name);
    auto ctx = RnsContext::Create(params);
    auto b = MakeCkksBackend(ctx, KeyGen(ctx, {}, 3));
    auto c = b.encryptor->Encrypt(std::vector<double>(params.slot_count(), 0.5));
    auto prod = b.evaluator->Multiply(c, c);
    const double q1 = static_cast<double>(ctx->primes()[1]);
    EXPECT_DOUBLE_EQ(prod.scale(), 0x1p60 / q1);
    // The dropped prime is the largest 30-bit prime = 1 mod 2N, so the ratio
    // to 2^30 is bounded by the prime gap, about 2^-12 here.
    EXPECT_NEAR(prod.scale() / 0x1p30, 1.0, 0x1p-10);
    auto out = b.decryptor->Decrypt(prod);
    EXPECT_NEAR(out[0], 0.25, 1e-4);
  }
}

TEST(CkksTest, EncryptionIsRandomized) {
  auto b = testing::ToyBackend(he::BackendKind::kCkks, 256);
  TestRng rng(31);
  auto v = rng.Vector(128);
  auto c1 = b.encryptor->Encrypt(v), c2 = b.encryptor->Encrypt(v);
  EXPECT_NE(b.evaluator->Serialize(c1), b.evaluator->Serialize(c2));
  EXPECT_LT(MaxAbsDiff(b.decryptor->Decrypt(c1), v), 1e-4);
  EXPECT_LT(MaxAbsDiff(b.decryptor->Decrypt(c2), v), 1e-4);
}

TEST(CkksTest, ToyPipelinesAgreeWithOracle) {
  const uint64_t degree = 256;
  const size_t S = degree / 2;
  auto params = he::ToyParams(degree);
  auto steps = he::PowerOfTwoSteps(S);
  auto ck = testing::ToyBackend(he::BackendKind::kCkks, degree, 9);
  auto orc = he::MakeOracleBackend(params, steps);
  TestRng rng(32);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto x = rng.Vector(S), y = rng.Vector(S);
    const size_t k = 1 + rng.Index(steps.size());
    auto run = [&](const he::Backend& b) {
      const auto& ev = *b.evaluator;
      auto d = ev.Sub(b.encryptor->Encrypt(x), b.encryptor->Encrypt(y));
      auto acc = ev.MultiplyNoRescale(d, d);
      for (size_t i = 0; i < k; ++i) acc = ev.Add(acc, ev.Rotate(acc, steps[i]));
      return b.decryptor->Decrypt(ev.Rescale(acc));
    };
    worst = std::max(worst, MaxAbsDiff(run(ck), run(orc)));
  }
  EXPECT_LE(worst, 1e-4);
}

TEST(SerializeTest, CiphertextRoundTripIsByteIdentical) {
  auto b = testing::ToyBackend(he::BackendKind::kCkks, 128);
  TestRng rng(testing::kSweepSeed);
  for (int i = 0; i < 100; ++i) {
    auto c = b.encryptor->Encrypt(rng.Vector(64));
    if (i % 3 == 1) c = b.evaluator->Multiply(c, c);
    if (i % 3 == 2) c = b.evaluator->Rotate(c, 4);
    auto bytes = b.evaluator->Serialize(c);
    auto back = b.evaluator->Deserialize(bytes);
    EXPECT_EQ(b.evaluator->Serialize(back), bytes);
    EXPECT_EQ(back.level(), c.level());
    EXPECT_EQ(back.scale(), c.scale());
  }
}

TEST(SerializeTest, KeysRoundTripIsByteIdentical) {
  auto ctx = RnsContext::Create(he::ToyParams(64));
  auto keys = KeyGen(ctx, {1, 2, 8}, 77);
  auto ks = SerializeKeySet(*ctx, keys);
  EXPECT_EQ(SerializeKeySet(*ctx, DeserializeKeySet(*ctx, ks)), ks);
  auto pk = SerializePublicKey(*ctx, *keys.pub);
  EXPECT_EQ(SerializePublicKey(*ctx, DeserializePublicKey(*ctx, pk)), pk);
  auto sk = SerializeSecretKey(*ctx, *keys.secret);
  EXPECT_EQ(SerializeSecretKey(*ctx, DeserializeSecretKey(*ctx, sk)), sk);
  auto ek = SerializeEvaluationKeys(*ctx, *keys.eval);
  EXPECT_EQ(SerializeEvaluationKeys(*ctx, DeserializeEvaluationKeys(*ctx, ek)), ek);
}

TEST(SerializeTest, HeaderLayout) {
  auto b = testing::ToyBackend(he::BackendKind::kCkks, 32);
  auto bytes = b.evaluator->Serialize(b.encryptor->Encrypt(std::vector<double>(16, 0.0)));
  ASSERT_GT(bytes.size(), 15u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "PFIP");
  EXPECT_EQ(bytes[4] | (bytes[5] << 8), kFormatVersion);
  EXPECT_EQ(bytes[6], static_cast<uint8_t>(ObjectTag::kCiphertext));
}

TEST(SerializeTest, CorruptionDetected) {
  auto b = testing::ToyBackend(he::BackendKind::kCkks, 32);
  const auto& ev = *b.evaluator;
  auto good = ev.Serialize(b.encryptor->Encrypt(std::vector<double>(16, 0.25)));

  auto bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_EQ(CodeOf([&] { ev.Deserialize(bad_magic); }), ErrorCode::kBadMagic);

  auto bad_version = good;
  bad_version[4] = 9;
  EXPECT_EQ(CodeOf([&] { ev.Deserialize(bad_version); }), ErrorCode::kBadVersion);

  auto truncated = good;
  truncated.resize(good.size() - 5);
  EXPECT_EQ(CodeOf([&] { ev.Deserialize(truncated); }), ErrorCode::kTruncated);

  auto trailing = good;
  trailing.push_back(0);
  EXPECT_EQ(CodeOf([&] { ev.Deserialize(trailing); }), ErrorCode::kCorrupt);

  auto other = testing::ToyBackend(he::BackendKind::kCkks, 64);
  EXPECT_EQ(CodeOf([&] { other.evaluator->Deserialize(good); }), ErrorCode::kParamsMismatch);

  auto ctx = RnsContext::Create(he::ToyParams(32));
  auto sk = SerializeSecretKey(*ctx, *KeyGen(ctx, {}, 1).secret);
  EXPECT_EQ(CodeOf([&] { DeserializePublicKey(*ctx, sk); }), ErrorCode::kParamsMismatch);
}

TEST(SecurityTest, TableRows) {
  EXPECT_EQ(SecurityTable().size(), 6u);
  EXPECT_EQ(MaxModulusBits(8192, 128), 218);
  EXPECT_EQ(MaxModulusBits(8192, 192), 152);
  EXPECT_EQ(MaxModulusBits(8192, 256), 118);
  EXPECT_EQ(MaxModulusBits(32768, 128), 881);
  EXPECT_EQ(MaxModulusBits(32768, 192), 611);
  EXPECT_EQ(MaxModulusBits(32768, 256), 476);
  EXPECT_EQ(CodeOf([] { MaxModulusBits(16384, 128); }), ErrorCode::kNotTabulated);
}

TEST(SecurityTest, PresetsReachTwoFiftySix) {
  auto comp = CheckSecurity(he::Preset("complete-8192"));
  EXPECT_TRUE(comp.claim);
  EXPECT_EQ(comp.logq, 110);
  EXPECT_EQ(comp.bound, 118);
  EXPECT_EQ(comp.achieved_level, 256);
  auto div = CheckSecurity(he::Preset("divided-32768"));
  EXPECT_EQ(div.logq, 110);
  EXPECT_EQ(div.bound, 476);
  EXPECT_EQ(div.achieved_level, 256);
}

TEST(SecurityTest, ToyHasNoClaim) {
  auto r = CheckSecurity(he::ToyParams(32));
  EXPECT_FALSE(r.claim);
  EXPECT_FALSE(r.achieved_level.has_value());
  EXPECT_NE(r.summary.find("no security claim"), std::string::npos);
}

}  // namespace
}  // namespace pfip::ckks
