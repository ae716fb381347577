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

#include <set>

#include "pfip/ckks/modulus.h"
#include "pfip/ckks/ntt.h"
#include "pfip/common/error.h"
#include "support/test_support.h"

namespace pfip::ckks {
namespace {

using testing::TestRng;

bool TrialDivisionPrime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

TEST(ModulusTest, BarrettReduceMatchesRemainder) {
  TestRng rng(11);
  for (uint64_t q : {3ULL, 65537ULL, (1ULL << 30) - 35, (1ULL << 40) - 87, (1ULL << 60) - 93}) {
    Modulus mod(q);
    for (int i = 0; i < 2000; ++i) {
      const u128 x = (static_cast<u128>(rng.Below(q)) * rng.Below(q));
      EXPECT_EQ(mod.Reduce(x), static_cast<uint64_t>(x % q));
      const uint64_t a = rng.Below(q), b = rng.Below(q);
      EXPECT_EQ(mod.Mul(a, b), static_cast<uint64_t>(static_cast<u128>(a) * b % q));
      EXPECT_EQ(mod.Add(a, b), (a + b) % q);
      EXPECT_EQ(mod.Sub(a, b), (a + q - b) % q);
      const uint64_t w = rng.Below(q);
      EXPECT_EQ(mod.MulShoup(a, w, mod.ShoupPrecompute(w)),
                static_cast<uint64_t>(static_cast<u128>(a) * w % q));
    }
  }
}

TEST(ModulusTest, SignedLiftAndInverse) {
  Modulus mod(97);
  EXPECT_EQ(mod.FromSigned(-1), 96u);
  EXPECT_EQ(mod.FromSigned(-97), 0u);
  EXPECT_EQ(mod.FromSigned(-98), 96u);
  EXPECT_EQ(mod.FromSigned(200), 6u);
  for (uint64_t a = 1; a < 97; ++a) EXPECT_EQ(mod.Mul(a, mod.Inverse(a)), 1u);
  EXPECT_EQ(mod.Pow(5, 96), 1u);
}

TEST(ModulusTest, PrimalityAgreesWithTrialDivision) {
  for (uint64_t n = 0; n < 5000; ++n) EXPECT_EQ(IsPrime(n), TrialDivisionPrime(n)) << n;
  EXPECT_TRUE(IsPrime((1ULL << 61) - 1));
  EXPECT_FALSE(IsPrime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(ModulusTest, FindPrimeBelowIsNttFriendlyAndDistinct) {
  for (uint64_t n : {32ULL, 8192ULL, 32768ULL}) {
    std::set<uint64_t> used;
    for (int bits : {40, 30, 40}) {
      const uint64_t q = FindPrimeBelow(bits, 2 * n, used);
      EXPECT_TRUE(IsPrime(q));
      EXPECT_EQ(q % (2 * n), 1u);
      EXPECT_LT(q, 1ULL << bits);
      EXPECT_GE(q, 1ULL << (bits - 1));
      EXPECT_FALSE(used.contains(q));
      used.insert(q);
    }
  }
}

TEST(ModulusTest, PrimitiveRootHasExactOrder) {
  std::set<uint64_t> none;
  const uint64_t q = FindPrimeBelow(30, 128, none);
  Modulus mod(q);
  const uint64_t psi = PrimitiveRoot(mod, 128);
  EXPECT_EQ(mod.Pow(psi, 128), 1u);
  EXPECT_EQ(mod.Pow(psi, 64), q - 1);
}

class NttTest : public ::testing::TestWithParam<size_t> {};

TEST_P(NttTest, ForwardInverseIsIdentity) {
  const size_t n = GetParam();
  std::set<uint64_t> none;
  Modulus q(FindPrimeBelow(40, 2 * n, none));
  NttTables t(n, q);
  TestRng rng(n);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<uint64_t> a(n);
    for (auto& x : a) x = rng.Below(q.value());
    auto b = a;
    t.Forward(b);
    t.Inverse(b);
    EXPECT_EQ(a, b);
  }
}

TEST_P(NttTest, PointwiseProductIsNegacyclicConvolution) {
  const size_t n = GetParam();
  if (n > 64) GTEST_SKIP() << "schoolbook oracle limited to degree 64";
  std::set<uint64_t> none;
  Modulus q(FindPrimeBelow(30, 2 * n, none));
  NttTables t(n, q);
  TestRng rng(100 + n);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<uint64_t> a(n), b(n);
    for (auto& x : a) x = rng.Below(q.value());
    for (auto& x : b) x = rng.Below(q.value());
    const auto expect = NegacyclicMultiplySchoolbook(a, b, q);
    t.Forward(a);
    t.Forward(b);
    for (size_t i = 0; i < n; ++i) a[i] = q.Mul(a[i], b[i]);
    t.Inverse(a);
    EXPECT_EQ(a, expect);
  }
}

TEST(NttTest, SchoolbookWrapsWithNegation) {
  // x^(n-1) * x = x^n = -1 in Z_q[x]/(x^n + 1).
  Modulus q(97);
  std::vector<uint64_t> a(8, 0), b(8, 0);
  a[7] = 1;
  b[1] = 1;
  auto c = NegacyclicMultiplySchoolbook(a, b, q);
  EXPECT_EQ(c[0], 96u);
  for (size_t i = 1; i < 8; ++i) EXPECT_EQ(c[i], 0u);
}

INSTANTIATE_TEST_SUITE_P(Degrees, NttTest, ::testing::Values(8, 16, 32, 64, 1024, 32768));

}  // namespace
}  // namespace pfip::ckks
