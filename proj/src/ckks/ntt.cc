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

#include "pfip/ckks/ntt.h"

#include <bit>

#include "pfip/common/error.h"

namespace pfip::ckks {
namespace {

size_t BitReverse(size_t x, int bits) {
  size_t r = 0;
  for (int i = 0; i < bits; ++i) {
    r = (r << 1) | (x & 1);
    x >>= 1;
  }
  return r;
}

}  // namespace

NttTables::NttTables(size_t n, const Modulus& q) : n_(n), q_(q) {
  Check(std::has_single_bit(n) && n >= 2, ErrorCode::kInvalidArgument, "NTT size must be 2^k");
  Check((q.value() - 1) % (2 * n) == 0, ErrorCode::kInvalidArgument,
        "modulus is not 1 mod 2n");
  Check(q.value() < (uint64_t{1} << 62), ErrorCode::kInvalidArgument, "modulus exceeds 62 bits");
  const uint64_t psi = PrimitiveRoot(q, 2 * n);
  const uint64_t psi_inv = q.Inverse(psi);
  const int log_n = std::countr_zero(n);
  psi_rev_.resize(n);
  psi_inv_rev_.resize(n);
  uint64_t pw = 1;
  uint64_t pw_inv = 1;
  for (size_t i = 0; i < n; ++i) {
    const size_t r = BitReverse(i, log_n);
    psi_rev_[r] = pw;
    psi_inv_rev_[r] = pw_inv;
    pw = q.Mul(pw, psi);
    pw_inv = q.Mul(pw_inv, psi_inv);
  }
  psi_rev_shoup_.resize(n);
  psi_inv_rev_shoup_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    psi_rev_shoup_[i] = q.ShoupPrecompute(psi_rev_[i]);
    psi_inv_rev_shoup_[i] = q.ShoupPrecompute(psi_inv_rev_[i]);
  }
  n_inv_ = q.Inverse(n);
  n_inv_shoup_ = q.ShoupPrecompute(n_inv_);
}

// Both transforms use lazy (Harvey) butterflies: intermediate values live in
// [0, 4q) and are fully reduced once at the end. Needs 4q < 2^64.
namespace {

inline uint64_t MulShoupLazy(uint64_t a, uint64_t w, uint64_t w_shoup, uint64_t q) {
  const uint64_t hi = static_cast<uint64_t>((static_cast<unsigned __int128>(a) * w_shoup) >> 64);
  return a * w - hi * q;  // in [0, 2q)
}

}  // namespace

void NttTables::Forward(std::span<uint64_t> a) const {
  const uint64_t p = q_.value();
  const uint64_t two_p = 2 * p;
  size_t t = n_;
  for (size_t m = 1; m < n_; m <<= 1) {
    t >>= 1;
    for (size_t i = 0; i < m; ++i) {
      const size_t j1 = 2 * i * t;
      const uint64_t w = psi_rev_[m + i];
      const uint64_t ws = psi_rev_shoup_[m + i];
      uint64_t* x = a.data() + j1;
      uint64_t* y = x + t;
      for (size_t j = 0; j < t; ++j) {
        uint64_t u = x[j];
        if (u >= two_p) u -= two_p;
        const uint64_t v = MulShoupLazy(y[j], w, ws, p);
        x[j] = u + v;
        y[j] = u + two_p - v;
      }
    }
  }
  for (auto& x : a) {
    if (x >= two_p) x -= two_p;
    if (x >= p) x -= p;
  }
}

void NttTables::Inverse(std::span<uint64_t> a) const {
  const uint64_t p = q_.value();
  const uint64_t two_p = 2 * p;
  size_t t = 1;
  for (size_t m = n_; m > 1; m >>= 1) {
    const size_t h = m >> 1;
    size_t j1 = 0;
    for (size_t i = 0; i < h; ++i) {
      const uint64_t w = psi_inv_rev_[h + i];
      const uint64_t ws = psi_inv_rev_shoup_[h + i];
      uint64_t* x = a.data() + j1;
      uint64_t* y = x + t;
      for (size_t j = 0; j < t; ++j) {
        const uint64_t u = x[j];
        const uint64_t v = y[j];
        uint64_t s = u + v;
        if (s >= two_p) s -= two_p;
        x[j] = s;
        y[j] = MulShoupLazy(u + two_p - v, w, ws, p);
      }
      j1 += 2 * t;
    }
    t <<= 1;
  }
  for (auto& x : a) {
    x = MulShoupLazy(x, n_inv_, n_inv_shoup_, p);
    if (x >= p) x -= p;
  }
}

std::vector<uint64_t> NegacyclicMultiplySchoolbook(std::span<const uint64_t> a,
                                                   std::span<const uint64_t> b,
                                                   const Modulus& q) {
  const size_t n = a.size();
  Check(b.size() == n, ErrorCode::kInvalidArgument, "operand sizes differ");
  std::vector<uint64_t> out(n, 0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      const uint64_t prod = q.Mul(a[i], b[j]);
      const size_t k = i + j;
      if (k < n) {
        out[k] = q.Add(out[k], prod);
      } else {
        out[k - n] = q.Sub(out[k - n], prod);
      }
    }
  }
  return out;
}

}  // namespace pfip::ckks
