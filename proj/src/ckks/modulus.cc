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

#include "pfip/ckks/modulus.h"

#include <bit>
#include <string>

#include "pfip/common/error.h"

namespace pfip::ckks {

Modulus::Modulus(uint64_t value) : value_(value) {
  Check(value >= 2 && value < (1ULL << 61), ErrorCode::kInvalidArgument,
        "modulus must lie in [2, 2^61)");
  // floor(2^128 / q) as two words.
  const u128 high = (~static_cast<u128>(0)) / value;
  // ~0 / q equals floor((2^128 - 1) / q), which is floor(2^128 / q) unless q
  // divides 2^128; q is odd or 2 so only q = 2 is affected and is never used.
  ratio_lo_ = static_cast<uint64_t>(high);
  ratio_hi_ = static_cast<uint64_t>(high >> 64);
}

int Modulus::bits() const { return std::bit_width(value_); }

uint64_t Modulus::Pow(uint64_t base, uint64_t exp) const {
  uint64_t result = 1 % value_;
  base %= value_;
  while (exp) {
    if (exp & 1) result = Mul(result, base);
    base = Mul(base, base);
    exp >>= 1;
  }
  return result;
}

uint64_t Modulus::Inverse(uint64_t a) const {
  a %= value_;
  Check(a != 0, ErrorCode::kInvalidArgument, "zero has no inverse");
  return Pow(a, value_ - 2);
}

namespace {

uint64_t MulMod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<u128>(a) * b % m);
}

uint64_t PowMod(uint64_t b, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = MulMod(r, b, m);
    b = MulMod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool IsPrime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    uint64_t x = PowMod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = MulMod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

uint64_t FindPrimeBelow(int bits, uint64_t congruence, const std::set<uint64_t>& exclude) {
  Check(bits >= 2 && bits <= 60, ErrorCode::kPrimeGeneration,
        "unsupported prime size " + std::to_string(bits));
  const uint64_t upper = 1ULL << bits;
  const uint64_t lower = 1ULL << (bits - 1);
  if (congruence < upper) {
    // Largest candidate of the form k * congruence + 1 below 2^bits.
    uint64_t candidate = ((upper - 2) / congruence) * congruence + 1;
    for (; candidate > lower; candidate -= congruence) {
      if (!exclude.contains(candidate) && IsPrime(candidate)) return candidate;
      if (candidate < congruence) break;
    }
  }
  Fail(ErrorCode::kPrimeGeneration, "no " + std::to_string(bits) +
                                        "-bit prime congruent to 1 mod " +
                                        std::to_string(congruence));
}

uint64_t PrimitiveRoot(const Modulus& q, uint64_t order) {
  const uint64_t p = q.value();
  Check((p - 1) % order == 0, ErrorCode::kInvalidArgument, "order does not divide q - 1");
  const uint64_t cofactor = (p - 1) / order;
  for (uint64_t g = 2; g < p; ++g) {
    const uint64_t root = q.Pow(g, cofactor);
    // order is a power of two: primitive iff root^(order/2) = -1.
    if (q.Pow(root, order / 2) == p - 1) return root;
  }
  Fail(ErrorCode::kInvalidArgument, "no primitive root found");
}

}  // namespace pfip::ckks
