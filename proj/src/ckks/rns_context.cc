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

#include "pfip/ckks/rns_context.h"

#include <algorithm>
#include <set>
#include <string>

#include "pfip/common/bytes.h"
#include "pfip/common/error.h"
#include "pfip/common/hash.h"

namespace pfip::ckks {

std::shared_ptr<const RnsContext> RnsContext::Create(const he::BackendParams& params) {
  return std::shared_ptr<const RnsContext>(new RnsContext(params));
}

RnsContext::RnsContext(const he::BackendParams& params)
    : params_(params), n_(static_cast<size_t>(params.poly_degree)) {
  params.Validate();
  int data_bits = 0;
  for (size_t i = 0; i + 1 < params.coeff_modulus_bits.size(); ++i) {
    data_bits += params.coeff_modulus_bits[i];
  }
  Check(data_bits <= 120, ErrorCode::kInvalidArgument,
        "ciphertext modulus above 120 bits is not supported");
  std::set<uint64_t> used;
  for (size_t i = 0; i < params.coeff_modulus_bits.size(); ++i) {
    uint64_t q = 0;
    try {
      q = FindPrimeBelow(params.coeff_modulus_bits[i], 2 * n_, used);
    } catch (const Error& e) {
      Fail(ErrorCode::kPrimeGeneration,
           "modulus " + std::to_string(i) + " (" +
               std::to_string(params.coeff_modulus_bits[i]) + " bits): " + e.what());
    }
    used.insert(q);
    moduli_.emplace_back(q);
  }
  ntt_.reserve(moduli_.size());
  for (const auto& q : moduli_) ntt_.emplace_back(n_, q);
  const size_t k = moduli_.size();
  inv_.assign(k * k, 0);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) {
      if (i != j) inv_[i * k + j] = moduli_[j].Inverse(moduli_[i].value() % moduli_[j].value());
    }
  }
  ByteWriter w;
  w.PutRaw(std::string_view("ckks"));
  w.PutU64(n_);
  for (const auto& q : moduli_) w.PutU64(q.value());
  w.PutU32(static_cast<uint32_t>(params.scale_bits));
  params_id_ = Fnv1a64(w.bytes());
}

std::vector<uint64_t> RnsContext::primes() const {
  std::vector<uint64_t> out;
  for (const auto& q : moduli_) out.push_back(q.value());
  return out;
}

std::vector<uint32_t> RnsContext::LevelModuli(int level, bool with_special) const {
  std::vector<uint32_t> out;
  for (int i = 0; i <= level; ++i) out.push_back(static_cast<uint32_t>(i));
  if (with_special) out.push_back(special_index());
  return out;
}

uint64_t RnsContext::GaloisElement(int steps) const {
  const uint64_t two_n = 2 * n_;
  const uint64_t slots = n_ / 2;
  const uint64_t k = static_cast<uint64_t>(((steps % static_cast<int64_t>(slots)) + slots) % slots);
  uint64_t g = 1;
  for (uint64_t i = 0; i < k; ++i) g = (g * 5) % two_n;
  return g;
}

void RnsContext::ToNtt(RnsPoly& p) const {
  for (size_t i = 0; i < p.num_limbs(); ++i) ntt_[p.moduli[i]].Forward(p.limb(i));
}

void RnsContext::FromNtt(RnsPoly& p) const {
  for (size_t i = 0; i < p.num_limbs(); ++i) ntt_[p.moduli[i]].Inverse(p.limb(i));
}

RnsPoly RnsContext::ApplyGalois(const RnsPoly& in, uint64_t elt) const {
  RnsPoly out(in.n, in.moduli);
  const uint64_t mask = 2 * n_ - 1;
  for (size_t l = 0; l < in.num_limbs(); ++l) {
    const Modulus& q = moduli_[in.moduli[l]];
    auto src = in.limb(l);
    auto dst = out.limb(l);
    for (size_t i = 0; i < n_; ++i) {
      const uint64_t idx = (static_cast<uint64_t>(i) * elt) & mask;
      if (idx < n_) {
        dst[idx] = src[i];
      } else {
        dst[idx - n_] = q.Neg(src[i]);
      }
    }
  }
  return out;
}

RnsPoly RnsContext::DivideAndRoundLast(const RnsPoly& p) const {
  Check(p.num_limbs() >= 2, ErrorCode::kDepthExhausted, "no limb left to drop");
  const size_t last = p.num_limbs() - 1;
  const uint32_t last_idx = p.moduli[last];
  std::vector<uint64_t> tail(p.limb(last).begin(), p.limb(last).end());
  ntt_[last_idx].Inverse(tail);
  // Rounding instead of flooring: add q_last/2 before the division.
  const uint64_t q_last = moduli_[last_idx].value();
  const uint64_t half = q_last >> 1;
  for (auto& x : tail) x = moduli_[last_idx].Add(x, half);
  RnsPoly out(p.n, std::vector<uint32_t>(p.moduli.begin(), p.moduli.end() - 1));
  std::vector<uint64_t> tmp(p.n);
  for (size_t j = 0; j < last; ++j) {
    const uint32_t idx = p.moduli[j];
    const Modulus& q = moduli_[idx];
    const uint64_t half_mod = q.ReduceWord(half);
    for (size_t i = 0; i < p.n; ++i) tmp[i] = q.Sub(q.ReduceWord(tail[i]), half_mod);
    ntt_[idx].Forward(tmp);
    const uint64_t inv = InverseMod(last_idx, idx);
    const uint64_t inv_shoup = q.ShoupPrecompute(inv);
    auto src = p.limb(j);
    auto dst = out.limb(j);
    for (size_t i = 0; i < p.n; ++i) dst[i] = q.MulShoup(q.Sub(src[i], tmp[i]), inv, inv_shoup);
  }
  return out;
}

void AddInPlace(const RnsContext& ctx, RnsPoly& a, const RnsPoly& b) {
  Check(a.moduli == b.moduli, ErrorCode::kLevelMismatch, "RNS bases differ");
  for (size_t l = 0; l < a.num_limbs(); ++l) {
    const Modulus& q = ctx.modulus(a.moduli[l]);
    auto x = a.limb(l);
    auto y = b.limb(l);
    for (size_t i = 0; i < a.n; ++i) x[i] = q.Add(x[i], y[i]);
  }
}

void SubInPlace(const RnsContext& ctx, RnsPoly& a, const RnsPoly& b) {
  Check(a.moduli == b.moduli, ErrorCode::kLevelMismatch, "RNS bases differ");
  for (size_t l = 0; l < a.num_limbs(); ++l) {
    const Modulus& q = ctx.modulus(a.moduli[l]);
    auto x = a.limb(l);
    auto y = b.limb(l);
    for (size_t i = 0; i < a.n; ++i) x[i] = q.Sub(x[i], y[i]);
  }
}

void NegateInPlace(const RnsContext& ctx, RnsPoly& a) {
  for (size_t l = 0; l < a.num_limbs(); ++l) {
    const Modulus& q = ctx.modulus(a.moduli[l]);
    for (auto& x : a.limb(l)) x = q.Neg(x);
  }
}

RnsPoly Multiply(const RnsContext& ctx, const RnsPoly& a, const RnsPoly& b) {
  RnsPoly out(a.n, a.moduli);
  MultiplyAccumulate(ctx, out, a, b);
  return out;
}

void MultiplyAccumulate(const RnsContext& ctx, RnsPoly& acc, const RnsPoly& a,
                        const RnsPoly& b) {
  Check(a.moduli == b.moduli && acc.moduli == a.moduli, ErrorCode::kLevelMismatch,
        "RNS bases differ");
  for (size_t l = 0; l < a.num_limbs(); ++l) {
    const Modulus& q = ctx.modulus(a.moduli[l]);
    auto x = a.limb(l);
    auto y = b.limb(l);
    auto z = acc.limb(l);
    for (size_t i = 0; i < a.n; ++i) z[i] = q.Add(z[i], q.Mul(x[i], y[i]));
  }
}

RnsPoly Restrict(const RnsPoly& p, const std::vector<uint32_t>& moduli) {
  RnsPoly out(p.n, moduli);
  for (size_t l = 0; l < moduli.size(); ++l) {
    auto it = std::find(p.moduli.begin(), p.moduli.end(), moduli[l]);
    Check(it != p.moduli.end(), ErrorCode::kLevelMismatch, "modulus not present in source");
    auto src = p.limb(static_cast<size_t>(it - p.moduli.begin()));
    std::copy(src.begin(), src.end(), out.limb(l).begin());
  }
  return out;
}

}  // namespace pfip::ckks
