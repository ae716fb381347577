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

#include "pfip/ckks/encoder.h"

#include <bit>
#include <cmath>
#include <numbers>

#include "pfip/common/error.h"

namespace pfip::ckks {

using cplx = std::complex<double>;

Encoder::Encoder(std::shared_ptr<const RnsContext> ctx)
    : ctx_(std::move(ctx)), slots_(ctx_->n() / 2) {
  const size_t m = 2 * ctx_->n();
  rot_group_.resize(slots_);
  size_t g = 1;
  for (size_t i = 0; i < slots_; ++i) {
    rot_group_[i] = g;
    g = (g * 5) % m;
  }
  ksi_.resize(m + 1);
  for (size_t j = 0; j <= m; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
    ksi_[j] = cplx(std::cos(angle), std::sin(angle));
  }
  const int log_slots = std::countr_zero(slots_);
  bit_rev_.resize(slots_);
  for (size_t i = 0; i < slots_; ++i) {
    size_t r = 0;
    size_t x = i;
    for (int b = 0; b < log_slots; ++b) {
      r = (r << 1) | (x & 1);
      x >>= 1;
    }
    bit_rev_[i] = r;
  }
}

void Encoder::SpecialFft(std::vector<cplx>& vals) const {
  const size_t size = vals.size();
  const size_t m = 2 * ctx_->n();
  for (size_t i = 0; i < size; ++i) {
    if (i < bit_rev_[i]) std::swap(vals[i], vals[bit_rev_[i]]);
  }
  for (size_t len = 2; len <= size; len <<= 1) {
    const size_t lenh = len >> 1;
    const size_t lenq = len << 2;
    for (size_t i = 0; i < size; i += len) {
      for (size_t j = 0; j < lenh; ++j) {
        const size_t idx = (rot_group_[j] % lenq) * (m / lenq);
        const cplx u = vals[i + j];
        const cplx v = vals[i + j + lenh] * ksi_[idx];
        vals[i + j] = u + v;
        vals[i + j + lenh] = u - v;
      }
    }
  }
}

void Encoder::SpecialFftInverse(std::vector<cplx>& vals) const {
  const size_t size = vals.size();
  const size_t m = 2 * ctx_->n();
  for (size_t len = size; len >= 2; len >>= 1) {
    const size_t lenh = len >> 1;
    const size_t lenq = len << 2;
    for (size_t i = 0; i < size; i += len) {
      for (size_t j = 0; j < lenh; ++j) {
        const size_t idx = (lenq - (rot_group_[j] % lenq)) * (m / lenq);
        const cplx u = vals[i + j] + vals[i + j + lenh];
        const cplx v = (vals[i + j] - vals[i + j + lenh]) * ksi_[idx];
        vals[i + j] = u;
        vals[i + j + lenh] = v;
      }
    }
  }
  for (size_t i = 0; i < size; ++i) {
    if (i < bit_rev_[i]) std::swap(vals[i], vals[bit_rev_[i]]);
  }
  const double inv = 1.0 / static_cast<double>(size);
  for (auto& v : vals) v *= inv;
}

std::vector<double> Encoder::EmbedInverse(std::span<const double> slots) const {
  Check(slots.size() == slots_, ErrorCode::kInvalidArgument, "slot count mismatch");
  std::vector<cplx> vals(slots.begin(), slots.end());
  SpecialFftInverse(vals);
  std::vector<double> coeffs(ctx_->n());
  for (size_t i = 0; i < slots_; ++i) {
    coeffs[i] = vals[i].real();
    coeffs[i + slots_] = vals[i].imag();
  }
  return coeffs;
}

he::SlotVector Encoder::Embed(std::span<const double> coeffs) const {
  Check(coeffs.size() == ctx_->n(), ErrorCode::kInvalidArgument, "coefficient count mismatch");
  std::vector<cplx> vals(slots_);
  for (size_t i = 0; i < slots_; ++i) vals[i] = cplx(coeffs[i], coeffs[i + slots_]);
  SpecialFft(vals);
  he::SlotVector out(slots_);
  for (size_t i = 0; i < slots_; ++i) out[i] = vals[i].real();
  return out;
}

RnsPoly Encoder::Encode(std::span<const double> slots, double scale, int level) const {
  Check(slots.size() == slots_, ErrorCode::kInvalidArgument, "slot count mismatch");
  double max_abs = 0;
  for (double x : slots) {
    Check(std::isfinite(x), ErrorCode::kInvalidArgument, "non-finite slot value");
    max_abs = std::max(max_abs, std::abs(x));
  }
  const double budget = static_cast<double>(ctx_->modulus(0).value()) / 2.0;
  Check(max_abs * scale < budget, ErrorCode::kOverflow,
        "slot magnitude " + std::to_string(max_abs) + " overflows the modulus budget at scale 2^" +
            std::to_string(std::log2(scale)));
  const std::vector<double> coeffs = EmbedInverse(slots);
  RnsPoly out(ctx_->n(), ctx_->LevelModuli(level, false));
  for (size_t i = 0; i < ctx_->n(); ++i) {
    const double c = std::round(coeffs[i] * scale);
    Check(std::abs(c) < 0x1p62, ErrorCode::kOverflow, "coefficient exceeds 62 bits");
    const auto ci = static_cast<int64_t>(c);
    for (size_t l = 0; l < out.num_limbs(); ++l) {
      out.limb(l)[i] = ctx_->modulus(out.moduli[l]).FromSigned(ci);
    }
  }
  ctx_->ToNtt(out);
  return out;
}

he::SlotVector Encoder::Decode(const RnsPoly& ntt_poly, double scale) const {
  RnsPoly p = ntt_poly;
  ctx_->FromNtt(p);
  const size_t limbs = p.num_limbs();
  // Garner reconstruction into [0, Q), then centering; Q < 2^121.
  std::vector<u128> partial_q(limbs, 1);
  u128 q_total = 1;
  for (size_t l = 0; l < limbs; ++l) {
    partial_q[l] = q_total;
    q_total *= ctx_->modulus(p.moduli[l]).value();
  }
  std::vector<uint64_t> prod_inv(limbs, 1);
  for (size_t l = 1; l < limbs; ++l) {
    const Modulus& q = ctx_->modulus(p.moduli[l]);
    for (size_t k = 0; k < l; ++k) prod_inv[l] = q.Mul(prod_inv[l], ctx_->InverseMod(p.moduli[k], p.moduli[l]));
  }
  std::vector<double> coeffs(ctx_->n());
  for (size_t i = 0; i < ctx_->n(); ++i) {
    u128 x = p.limb(0)[i];
    for (size_t l = 1; l < limbs; ++l) {
      const Modulus& q = ctx_->modulus(p.moduli[l]);
      // x currently correct modulo the product of the first l primes.
      const u128 q_sq = static_cast<u128>(q.value()) * q.value();
      const uint64_t x_mod = x < q_sq ? q.Reduce(x) : static_cast<uint64_t>(x % q.value());
      const uint64_t t = q.Mul(q.Sub(p.limb(l)[i], x_mod), prod_inv[l]);
      x += partial_q[l] * t;
    }
    long double v = x > q_total / 2 ? -static_cast<long double>(q_total - x)
                                    : static_cast<long double>(x);
    coeffs[i] = static_cast<double>(v / scale);
  }
  return Embed(coeffs);
}

}  // namespace pfip::ckks
