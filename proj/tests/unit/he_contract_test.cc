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

// Backend contract, exercised identically on the oracle and CKKS backends.

#include <gtest/gtest.h>

#include <thread>

#include "pfip/common/error.h"
#include "pfip/he/backend.h"
#include "support/test_support.h"

namespace pfip::he {
namespace {

using testing::MaxAbsDiff;
using testing::Padded;
using testing::TestRng;
using testing::ToyBackend;

constexpr uint64_t kDegree = 64;  // 32 slots

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kIo;
}

class ContractTest : public ::testing::TestWithParam<BackendKind> {
 protected:
  void SetUp() override { b_ = ToyBackend(GetParam(), kDegree); }

  double tol() const { return GetParam() == BackendKind::kOracle ? 0.0 : 1e-4; }
  size_t S() const { return b_.encryptor->params().slot_count(); }
  CipherHandle Enc(const std::vector<double>& v) const { return b_.encryptor->Encrypt(Padded(v, S())); }
  SlotVector Dec(const CipherHandle& c) const { return b_.decryptor->Decrypt(c); }
  const Evaluator& ev() const { return *b_.evaluator; }

  Backend b_;
};

TEST_P(ContractTest, ZerosRoundTrip) {
  auto out = Dec(Enc(std::vector<double>(S(), 0.0)));
  for (double x : out) EXPECT_NEAR(x, 0.0, tol());
}

TEST_P(ContractTest, SmallToyRoundTrip) {
  auto b = ToyBackend(GetParam(), 8);  // S = 4
  auto out = b.decryptor->Decrypt(b.encryptor->Encrypt(std::vector<double>{1, 0, 0, 0}));
  std::vector<double> expect{1, 0, 0, 0};
  EXPECT_LE(MaxAbsDiff(out, expect), tol());
}

TEST_P(ContractTest, RandomRoundTripSweep) {
  TestRng rng(testing::kSweepSeed);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    auto v = rng.Vector(S());
    worst = std::max(worst, MaxAbsDiff(Dec(Enc(v)), v));
  }
  EXPECT_LE(worst, tol());
}

TEST_P(ContractTest, AddComponentSums) {
  auto out = Dec(ev().Add(Enc({1, 2}), Enc({3, 4})));
  EXPECT_NEAR(out[0], 4, tol());
  EXPECT_NEAR(out[1], 6, tol());
  EXPECT_NEAR(out[2], 0, tol());
}

TEST_P(ContractTest, AddZeroIsIdentity) {
  TestRng rng(3);
  auto v = rng.Vector(S());
  auto a = Enc(v);
  EXPECT_LE(MaxAbsDiff(Dec(ev().Add(a, Enc(std::vector<double>(S(), 0.0)))), v), tol());
}

TEST_P(ContractTest, AddSubAgainstDirectArithmetic) {
  TestRng rng(4);
  double worst = 0;
  for (int i = 0; i < 500; ++i) {
    auto x = rng.Vector(S()), y = rng.Vector(S());
    auto sum = Dec(ev().Add(Enc(x), Enc(y)));
    auto diff = Dec(ev().Sub(Enc(x), Enc(y)));
    for (size_t j = 0; j < S(); ++j) {
      worst = std::max(worst, std::abs(sum[j] - (x[j] + y[j])));
      worst = std::max(worst, std::abs(diff[j] - (x[j] - y[j])));
    }
  }
  EXPECT_LE(worst, tol());
}

TEST_P(ContractTest, MultiplyByOnes) {
  TestRng rng(5);
  auto v = rng.Vector(S());
  auto prod = ev().Multiply(Enc(std::vector<double>(S(), 1.0)), Enc(v));
  EXPECT_LE(MaxAbsDiff(Dec(prod), v), tol());
}

TEST_P(ContractTest, Squaring) {
  auto c = Enc({2, 3});
  auto out = Dec(ev().Multiply(c, c));
  EXPECT_NEAR(out[0], 4, tol());
  EXPECT_NEAR(out[1], 9, tol());
}

TEST_P(ContractTest, MultiplyAgainstDirectArithmetic) {
  TestRng rng(6);
  double worst = 0;
  for (int i = 0; i < 500; ++i) {
    auto x = rng.Vector(S()), y = rng.Vector(S());
    auto out = Dec(ev().Multiply(Enc(x), Enc(y)));
    for (size_t j = 0; j < S(); ++j) worst = std::max(worst, std::abs(out[j] - x[j] * y[j]));
  }
  RecordProperty("max_abs_error", std::to_string(worst));
  EXPECT_LE(worst, tol());
}

TEST_P(ContractTest, MultiplyDropsOneLevelAndRestoresScale) {
  auto c = Enc({0.5});
  auto prod = ev().Multiply(c, c);
  EXPECT_EQ(prod.level(), c.level() - 1);
  EXPECT_TRUE(ev().IsNormalizedScale(prod.scale()));
  EXPECT_NEAR(prod.scale() / 0x1p30, 1.0, 1e-2);
}

TEST_P(ContractTest, RotateUnitShift) {
  auto b = ToyBackend(GetParam(), 8);
  auto c = b.encryptor->Encrypt(std::vector<double>{1, 2, 3, 4});
  auto out = b.decryptor->Decrypt(b.evaluator->Rotate(c, 1));
  std::vector<double> expect{2, 3, 4, 1};
  EXPECT_LE(MaxAbsDiff(out, expect), tol());
}

TEST_P(ContractTest, RotateHalfTwiceIsIdentity) {
  TestRng rng(8);
  auto v = rng.Vector(S());
  const int half = static_cast<int>(S() / 2);
  auto out = Dec(ev().Rotate(ev().Rotate(Enc(v), half), half));
  EXPECT_LE(MaxAbsDiff(out, v), tol());
}

TEST_P(ContractTest, RotateEveryPowerOfTwoStep) {
  TestRng rng(9);
  for (int steps : PowerOfTwoSteps(S())) {
    auto v = rng.Vector(S());
    auto out = Dec(ev().Rotate(Enc(v), steps));
    for (size_t j = 0; j < S(); ++j) EXPECT_NEAR(out[j], v[(j + steps) % S()], tol());
  }
}

TEST_P(ContractTest, HandlesAreImmutable) {
  TestRng rng(10);
  auto v = rng.Vector(S());
  auto c = Enc(v);
  const auto before = ev().Serialize(c);
  (void)ev().Multiply(c, c);
  (void)ev().Rotate(c, 1);
  (void)ev().Add(c, c);
  EXPECT_EQ(ev().Serialize(c), before);
}

TEST_P(ContractTest, OpCountsTrackEveryEvaluation) {
  ev().ResetCounts();
  auto c = Enc({1});
  auto s = ev().Sub(ev().Add(c, c), c);
  auto r = ev().Rotate(ev().Multiply(s, s), 1);
  auto z = ev().Zero(c.level());
  (void)r;
  (void)z;
  EXPECT_EQ(ev().counts(), (OpCounts{1, 1, 1, 1, 1}));
}

TEST_P(ContractTest, LengthMismatchRejected) {
  EXPECT_EQ(CodeOf([&] { b_.encryptor->Encrypt(std::vector<double>(S() - 1, 0.0)); }),
            ErrorCode::kInvalidArgument);
}

TEST_P(ContractTest, NonFiniteRejected) {
  std::vector<double> v(S(), 0.0);
  v[3] = std::nan("");
  EXPECT_EQ(CodeOf([&] { b_.encryptor->Encrypt(v); }), ErrorCode::kInvalidArgument);
}

TEST_P(ContractTest, LevelMismatchRejected) {
  auto c = Enc({1});
  auto low = ev().Multiply(c, c);
  EXPECT_EQ(CodeOf([&] { ev().Add(c, low); }), ErrorCode::kLevelMismatch);
}

TEST_P(ContractTest, ScaleMismatchRejected) {
  auto c = Enc({1});
  auto raw = ev().MultiplyNoRescale(c, c);  // same level, scale 2^60
  EXPECT_EQ(CodeOf([&] { ev().Add(c, raw); }), ErrorCode::kScaleMismatch);
}

TEST_P(ContractTest, DepthExhausted) {
  auto c = Enc({1});
  auto once = ev().Multiply(c, c);
  EXPECT_EQ(CodeOf([&] { ev().Multiply(once, once); }), ErrorCode::kDepthExhausted);
}

TEST_P(ContractTest, MissingRotationKey) {
  auto b = ToyBackend(GetParam(), kDegree, 7, {1, 2});
  auto c = b.encryptor->Encrypt(std::vector<double>(S(), 0.0));
  EXPECT_FALSE(b.evaluator->HasRotationKey(4));
  EXPECT_EQ(CodeOf([&] { b.evaluator->Rotate(c, 4); }), ErrorCode::kMissingKey);
}

TEST_P(ContractTest, RotationStepOutOfRange) {
  auto c = Enc({1});
  EXPECT_EQ(CodeOf([&] { ev().Rotate(c, 0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { ev().Rotate(c, static_cast<int>(S())); }), ErrorCode::kInvalidArgument);
}

TEST_P(ContractTest, ParamsMismatchAcrossContexts) {
  auto other = ToyBackend(GetParam(), 2 * kDegree);
  auto foreign = other.encryptor->Encrypt(std::vector<double>(2 * S(), 0.0));
  auto c = Enc({1});
  EXPECT_EQ(CodeOf([&] { ev().Add(c, foreign); }), ErrorCode::kParamsMismatch);
  EXPECT_EQ(CodeOf([&] { b_.decryptor->Decrypt(foreign); }), ErrorCode::kParamsMismatch);
}

TEST_P(ContractTest, StrictDecryptRejectsUnrescaledProduct) {
  auto c = Enc({0.5});
  auto raw = ev().MultiplyNoRescale(c, c);
  EXPECT_EQ(CodeOf([&] { Dec(raw); }), ErrorCode::kScaleNotNormalized);
  auto lenient = ToyBackend(GetParam(), kDegree, 7, {}, DecryptMode::kLenient);
  auto lc = lenient.encryptor->Encrypt(Padded({0.5}, S()));
  auto out = lenient.decryptor->Decrypt(lenient.evaluator->MultiplyNoRescale(lc, lc));
  EXPECT_NEAR(out[0], 0.25, tol());
}

TEST_P(ContractTest, ConcurrentEvaluationMatchesSequential) {
  TestRng rng(12);
  std::vector<CipherHandle> in;
  for (int i = 0; i < 8; ++i) in.push_back(Enc(rng.Vector(S())));
  auto kernel = [&](const CipherHandle& c) {
    return ev().Serialize(ev().Rotate(ev().Multiply(c, c), 2));
  };
  std::vector<std::vector<uint8_t>> seq, par(in.size());
  for (const auto& c : in) seq.push_back(kernel(c));
  std::vector<std::thread> threads;
  for (size_t i = 0; i < in.size(); ++i) threads.emplace_back([&, i] { par[i] = kernel(in[i]); });
  for (auto& t : threads) t.join();
  EXPECT_EQ(seq, par);
}

INSTANTIATE_TEST_SUITE_P(Backends, ContractTest,
                         ::testing::Values(BackendKind::kOracle, BackendKind::kCkks),
                         [](const auto& info) { return std::string(BackendKindName(info.param)); });

// Oracle-only exactness properties.

TEST(OracleTest, RandomExpressionTreesAreExact) {
  auto b = ToyBackend(BackendKind::kOracle, 32);
  const auto& ev = *b.evaluator;
  const size_t S = 16;
  TestRng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    auto x = rng.Vector(S), y = rng.Vector(S);
    const int k = 1 << rng.Index(4);
    // ((x - y) * (x + y)) rotated by k, plus itself rotated by 2k mod S
    auto cx = b.encryptor->Encrypt(x), cy = b.encryptor->Encrypt(y);
    auto prod = ev.Multiply(ev.Sub(cx, cy), ev.Add(cx, cy));
    auto r1 = ev.Rotate(prod, k);
    auto r2 = ev.Rotate(r1, k);
    auto out = b.decryptor->Decrypt(ev.Add(r1, r2));
    for (size_t j = 0; j < S; ++j) {
      auto p = [&](size_t i) { return (x[i] - y[i]) * (x[i] + y[i]); };
      EXPECT_EQ(out[j], p((j + k) % S) + p((j + 2 * k) % S));
    }
  }
}

TEST(OracleTest, RotationComposition) {
  auto b = ToyBackend(BackendKind::kOracle, 64);
  TestRng rng(22);
  auto v = rng.Vector(32);
  auto c = b.encryptor->Encrypt(v);
  for (int a : {1, 2, 4, 8, 16}) {
    for (int s : {1, 2, 4, 8, 16}) {
      auto lhs = b.decryptor->Decrypt(b.evaluator->Rotate(b.evaluator->Rotate(c, a), s));
      for (size_t j = 0; j < 32; ++j) EXPECT_EQ(lhs[j], v[(j + a + s) % 32]);
    }
  }
}

}  // namespace
}  // namespace pfip::he
