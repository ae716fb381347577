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

#include "pfip/ckks/keys.h"

#include <cmath>
#include <set>
#include <string>

#include "pfip/common/error.h"

namespace pfip::ckks {

RnsPoly Sampler::FromSigned(const RnsContext& ctx, const std::vector<uint32_t>& moduli,
                            const std::vector<int64_t>& coeffs) {
  RnsPoly p(ctx.n(), moduli);
  for (size_t l = 0; l < moduli.size(); ++l) {
    const Modulus& q = ctx.modulus(moduli[l]);
    auto limb = p.limb(l);
    for (size_t i = 0; i < ctx.n(); ++i) limb[i] = q.FromSigned(coeffs[i]);
  }
  ctx.ToNtt(p);
  return p;
}

RnsPoly Sampler::Ternary(const RnsContext& ctx, const std::vector<uint32_t>& moduli) {
  std::uniform_int_distribution<int> dist(-1, 1);
  std::vector<int64_t> c(ctx.n());
  for (auto& x : c) x = dist(rng_);
  return FromSigned(ctx, moduli, c);
}

RnsPoly Sampler::Gaussian(const RnsContext& ctx, const std::vector<uint32_t>& moduli) {
  std::normal_distribution<double> dist(0.0, kSigma);
  const double bound = 6.0 * kSigma;
  std::vector<int64_t> c(ctx.n());
  for (auto& x : c) {
    double v;
    do {
      v = std::round(dist(rng_));
    } while (std::abs(v) > bound);
    x = static_cast<int64_t>(v);
  }
  return FromSigned(ctx, moduli, c);
}

RnsPoly Sampler::Uniform(const RnsContext& ctx, const std::vector<uint32_t>& moduli) {
  // Uniform in NTT form is uniform in coefficient form; sample directly.
  RnsPoly p(ctx.n(), moduli);
  for (size_t l = 0; l < moduli.size(); ++l) {
    std::uniform_int_distribution<uint64_t> dist(0, ctx.modulus(moduli[l]).value() - 1);
    for (auto& x : p.limb(l)) x = dist(rng_);
  }
  return p;
}

namespace {

KeySwitchKey MakeKeySwitchKey(const RnsContext& ctx, Sampler& sampler, const RnsPoly& s,
                              const RnsPoly& target) {
  const auto all = ctx.LevelModuli(ctx.top_level(), true);
  const uint32_t special = ctx.special_index();
  KeySwitchKey key;
  for (int i = 0; i <= ctx.top_level(); ++i) {
    RnsPoly a = sampler.Uniform(ctx, all);
    RnsPoly b = sampler.Gaussian(ctx, all);
    SubInPlace(ctx, b, Multiply(ctx, a, s));
    // Add P * target on limb i.
    const Modulus& q = ctx.modulus(static_cast<uint32_t>(i));
    const uint64_t p_mod = q.ReduceWord(ctx.modulus(special).value());
    auto bl = b.limb(static_cast<size_t>(i));
    auto tl = target.limb(static_cast<size_t>(i));
    for (size_t k = 0; k < ctx.n(); ++k) bl[k] = q.Add(bl[k], q.Mul(tl[k], p_mod));
    key.b.push_back(std::move(b));
    key.a.push_back(std::move(a));
  }
  return key;
}

}  // namespace

KeySet KeyGen(std::shared_ptr<const RnsContext> ctx, const std::vector<int>& rotation_steps,
              uint64_t seed) {
  const auto slots = static_cast<int>(ctx->n() / 2);
  std::set<int> steps(rotation_steps.begin(), rotation_steps.end());
  for (int s : steps) {
    Check(s > 0 && s < slots, ErrorCode::kInvalidArgument,
          "rotation step " + std::to_string(s) + " outside (0, S)");
  }
  Sampler sampler(seed);
  const auto all = ctx->LevelModuli(ctx->top_level(), true);

  auto secret = std::make_shared<SecretKey>();
  secret->s = sampler.Ternary(*ctx, all);

  auto pub = std::make_shared<PublicKey>();
  pub->a = sampler.Uniform(*ctx, all);
  pub->b = sampler.Gaussian(*ctx, all);
  SubInPlace(*ctx, pub->b, Multiply(*ctx, pub->a, secret->s));

  auto eval = std::make_shared<EvaluationKeys>();
  eval->relin = MakeKeySwitchKey(*ctx, sampler, secret->s, Multiply(*ctx, secret->s, secret->s));

  RnsPoly s_coeff = secret->s;
  ctx->FromNtt(s_coeff);
  for (int step : steps) {
    // Key for sigma(s): after the automorphism the ciphertext decrypts under
    // sigma(s), and switching maps it back to s.
    RnsPoly rotated = ctx->ApplyGalois(s_coeff, ctx->GaloisElement(step));
    ctx->ToNtt(rotated);
    eval->galois.emplace(step, MakeKeySwitchKey(*ctx, sampler, secret->s, rotated));
  }

  KeySet keys;
  keys.secret = std::move(secret);
  keys.pub = std::move(pub);
  keys.eval = std::move(eval);
  keys.seed = seed;
  return keys;
}

std::vector<int64_t> SecretKeyCoefficients(const RnsContext& ctx, const SecretKey& sk) {
  RnsPoly s = Restrict(sk.s, {0});
  ctx.FromNtt(s);
  const uint64_t q = ctx.modulus(0).value();
  std::vector<int64_t> out(ctx.n());
  for (size_t i = 0; i < ctx.n(); ++i) {
    const uint64_t x = s.limb(0)[i];
    out[i] = x > q / 2 ? -static_cast<int64_t>(q - x) : static_cast<int64_t>(x);
  }
  return out;
}

}  // namespace pfip::ckks
