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

#ifndef PFIP_CKKS_MODULUS_H_
#define PFIP_CKKS_MODULUS_H_

#include <cstdint>
#include <set>
#include <vector>

namespace pfip::ckks {

using u128 = unsigned __int128;

// Word-size prime modulus (< 2^61) with precomputed Barrett constants.
class Modulus {
 public:
  Modulus() = default;
  explicit Modulus(uint64_t value);

  uint64_t value() const { return value_; }
  int bits() const;

  // Reduces a 128-bit value below value()^2.
  uint64_t Reduce(u128 x) const {
    const uint64_t lo = static_cast<uint64_t>(x);
    const uint64_t hi = static_cast<uint64_t>(x >> 64);
    const uint64_t carry = static_cast<uint64_t>((static_cast<u128>(lo) * ratio_lo_) >> 64);
    const u128 t2 = static_cast<u128>(lo) * ratio_hi_;
    const u128 s1 = static_cast<u128>(static_cast<uint64_t>(t2)) + carry;
    const uint64_t tmp1 = static_cast<uint64_t>(s1);
    const uint64_t tmp3 = static_cast<uint64_t>(t2 >> 64) + static_cast<uint64_t>(s1 >> 64);
    const u128 t4 = static_cast<u128>(hi) * ratio_lo_;
    const u128 s2 = static_cast<u128>(tmp1) + static_cast<uint64_t>(t4);
    const uint64_t carry2 = static_cast<uint64_t>(t4 >> 64) + static_cast<uint64_t>(s2 >> 64);
    const uint64_t quotient = hi * ratio_hi_ + tmp3 + carry2;
    uint64_t r = lo - quotient * value_;
    return r >= value_ ? r - value_ : r;
  }

  uint64_t Mul(uint64_t a, uint64_t b) const { return Reduce(static_cast<u128>(a) * b); }
  uint64_t Add(uint64_t a, uint64_t b) const {
    const uint64_t s = a + b;
    return s >= value_ ? s - value_ : s;
  }
  uint64_t Sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + value_ - b; }
  uint64_t Neg(uint64_t a) const { return a == 0 ? 0 : value_ - a; }
  uint64_t ReduceWord(uint64_t a) const {
    if (a < value_) return a;
    // Barrett needs a < value()^2; small moduli fall back to division.
    if (value_ >> 32 || a < value_ * value_) return Reduce(a);
    return a % value_;
  }

  // Maps a signed integer into [0, value()).
  uint64_t FromSigned(int64_t a) const {
    const uint64_t m = ReduceWord(static_cast<uint64_t>(a < 0 ? -(a + 1) : a));
    return a < 0 ? Sub(value_ - 1, m) : m;
  }

  uint64_t Pow(uint64_t base, uint64_t exp) const;
  uint64_t Inverse(uint64_t a) const;

  // Shoup precomputation for repeated multiplication by a fixed operand.
  uint64_t ShoupPrecompute(uint64_t w) const {
    return static_cast<uint64_t>((static_cast<u128>(w) << 64) / value_);
  }
  // Returns a*w mod q given w' = ShoupPrecompute(w); result in [0, q).
  uint64_t MulShoup(uint64_t a, uint64_t w, uint64_t w_shoup) const {
    const uint64_t q = static_cast<uint64_t>((static_cast<u128>(a) * w_shoup) >> 64);
    const uint64_t r = a * w - q * value_;
    return r >= value_ ? r - value_ : r;
  }

  bool operator==(const Modulus& o) const { return value_ == o.value_; }

 private:
  uint64_t value_ = 0;
  uint64_t ratio_lo_ = 0;
  uint64_t ratio_hi_ = 0;
};

// Deterministic Miller-Rabin for 64-bit integers.
bool IsPrime(uint64_t n);

// Largest prime below 2^bits that is 1 mod `congruence` and not in `exclude`.
// Throws kPrimeGeneration when none exists above 2^(bits-1).
uint64_t FindPrimeBelow(int bits, uint64_t congruence, const std::set<uint64_t>& exclude);

// Generator of the order-`order` subgroup (order must divide q-1). Returns the
// smallest primitive order-th root of unity found by scanning candidates.
uint64_t PrimitiveRoot(const Modulus& q, uint64_t order);

}  // namespace pfip::ckks

#endif  // PFIP_CKKS_MODULUS_H_
