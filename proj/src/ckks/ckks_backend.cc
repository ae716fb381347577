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

#include "pfip/ckks/ckks_backend.h"

#include <mutex>
#include <string>

#include "pfip/ckks/serialize.h"
#include "pfip/common/error.h"

namespace pfip::ckks {
namespace {

he::CipherHandle Wrap(const RnsContext& ctx, RnsPoly c0, RnsPoly c1, double scale) {
  const int level = static_cast<int>(c0.num_limbs()) - 1;
  auto body = std::make_shared<Ciphertext>();
  body->c0 = std::move(c0);
  body->c1 = std::move(c1);
  return he::CipherHandle(std::move(body), level, scale, ctx.params_id());
}

class CkksEvaluator final : public he::Evaluator {
 public:
  CkksEvaluator(std::shared_ptr<const RnsContext> ctx, std::shared_ptr<const EvaluationKeys> keys)
      : Evaluator(ctx->params()), ctx_(std::move(ctx)), keys_(std::move(keys)) {}

  uint64_t params_id() const override { return ctx_->params_id(); }
  std::string_view backend_name() const override { return "ckks"; }
  bool HasRotationKey(int steps) const override { return keys_->galois.contains(steps); }

  std::vector<uint8_t> Serialize(const he::CipherHandle& c) const override {
    CheckOwned(c);
    return SerializeCiphertext(*ctx_, c);
  }

  he::CipherHandle Deserialize(std::span<const uint8_t> bytes) const override {
    return DeserializeCiphertext(*ctx_, bytes);
  }

 protected:
  he::CipherHandle DoAdd(const he::CipherHandle& a, const he::CipherHandle& b,
                         bool subtract) const override {
    const auto& x = a.body_as<Ciphertext>();
    const auto& y = b.body_as<Ciphertext>();
    RnsPoly c0 = x.c0;
    RnsPoly c1 = x.c1;
    if (subtract) {
      SubInPlace(*ctx_, c0, y.c0);
      SubInPlace(*ctx_, c1, y.c1);
    } else {
      AddInPlace(*ctx_, c0, y.c0);
      AddInPlace(*ctx_, c1, y.c1);
    }
    return Wrap(*ctx_, std::move(c0), std::move(c1), a.scale());
  }

  he::CipherHandle DoMultiply(const he::CipherHandle& a, const he::CipherHandle& b) const override {
    const auto& x = a.body_as<Ciphertext>();
    const auto& y = b.body_as<Ciphertext>();
    RnsPoly d0 = ckks::Multiply(*ctx_, x.c0, y.c0);
    RnsPoly d1 = ckks::Multiply(*ctx_, x.c0, y.c1);
    MultiplyAccumulate(*ctx_, d1, x.c1, y.c0);
    RnsPoly d2 = ckks::Multiply(*ctx_, x.c1, y.c1);
    ctx_->FromNtt(d2);
    auto [u0, u1] = KeySwitch(*ctx_, d2, keys_->relin);
    AddInPlace(*ctx_, d0, u0);
    AddInPlace(*ctx_, d1, u1);
    return Wrap(*ctx_, std::move(d0), std::move(d1), a.scale() * b.scale());
  }

  he::CipherHandle DoRescale(const he::CipherHandle& a) const override {
    const auto& x = a.body_as<Ciphertext>();
    const double dropped =
        static_cast<double>(ctx_->modulus(x.c0.moduli.back()).value());
    return Wrap(*ctx_, ctx_->DivideAndRoundLast(x.c0), ctx_->DivideAndRoundLast(x.c1),
                a.scale() / dropped);
  }

  he::CipherHandle DoRotate(const he::CipherHandle& a, int steps) const override {
    const auto& x = a.body_as<Ciphertext>();
    const uint64_t elt = ctx_->GaloisElement(steps);
    RnsPoly c0 = x.c0;
    RnsPoly c1 = x.c1;
    ctx_->FromNtt(c0);
    ctx_->FromNtt(c1);
    RnsPoly r0 = ctx_->ApplyGalois(c0, elt);
    RnsPoly r1 = ctx_->ApplyGalois(c1, elt);
    ctx_->ToNtt(r0);
    auto [u0, u1] = KeySwitch(*ctx_, r1, keys_->galois.at(steps));
    AddInPlace(*ctx_, r0, u0);
    return Wrap(*ctx_, std::move(r0), std::move(u1), a.scale());
  }

  he::CipherHandle DoZero(int level) const override {
    const auto moduli = ctx_->LevelModuli(level, false);
    return Wrap(*ctx_, RnsPoly(ctx_->n(), moduli), RnsPoly(ctx_->n(), moduli),
                params().nominal_scale());
  }

 private:
  std::shared_ptr<const RnsContext> ctx_;
  std::shared_ptr<const EvaluationKeys> keys_;
};

class CkksEncryptor final : public he::Encryptor {
 public:
  CkksEncryptor(std::shared_ptr<const RnsContext> ctx, std::shared_ptr<const PublicKey> key,
                uint64_t seed)
      : Encryptor(ctx->params()), ctx_(std::move(ctx)), key_(std::move(key)), encoder_(ctx_),
        sampler_(seed) {}

 protected:
  he::CipherHandle DoEncrypt(std::span<const double> v) const override {
    const int level = ctx_->top_level();
    const double scale = params().nominal_scale();
    RnsPoly m = encoder_.Encode(v, scale, level);
    const auto ext = ctx_->LevelModuli(level, true);
    RnsPoly u, e0, e1;
    {
      std::lock_guard<std::mutex> lock(mu_);
      u = sampler_.Ternary(*ctx_, ext);
      e0 = sampler_.Gaussian(*ctx_, ext);
      e1 = sampler_.Gaussian(*ctx_, ext);
    }
    // Encrypt zero over Q*P, then divide by P: the public-key noise shrinks
    // to the rounding term.
    RnsPoly c0 = ckks::Multiply(*ctx_, key_->b, u);
    AddInPlace(*ctx_, c0, e0);
    RnsPoly c1 = ckks::Multiply(*ctx_, key_->a, u);
    AddInPlace(*ctx_, c1, e1);
    c0 = ctx_->DivideAndRoundLast(c0);
    c1 = ctx_->DivideAndRoundLast(c1);
    AddInPlace(*ctx_, c0, m);
    return Wrap(*ctx_, std::move(c0), std::move(c1), scale);
  }

 private:
  std::shared_ptr<const RnsContext> ctx_;
  std::shared_ptr<const PublicKey> key_;
  Encoder encoder_;
  mutable std::mutex mu_;
  mutable Sampler sampler_;
};

class CkksDecryptor final : public he::Decryptor {
 public:
  CkksDecryptor(std::shared_ptr<const RnsContext> ctx, std::shared_ptr<const SecretKey> key,
                he::DecryptMode mode)
      : Decryptor(ctx->params(), mode), ctx_(std::move(ctx)), key_(std::move(key)),
        encoder_(ctx_) {}

 protected:
  uint64_t params_id() const override { return ctx_->params_id(); }

  he::SlotVector DoDecrypt(const he::CipherHandle& c) const override {
    const auto& x = c.body_as<Ciphertext>();
    RnsPoly m = ckks::Multiply(*ctx_, x.c1, Restrict(key_->s, x.c1.moduli));
    AddInPlace(*ctx_, m, x.c0);
    return encoder_.Decode(m, c.scale());
  }

 private:
  std::shared_ptr<const RnsContext> ctx_;
  std::shared_ptr<const SecretKey> key_;
  Encoder encoder_;
};

}  // namespace

std::pair<RnsPoly, RnsPoly> KeySwitch(const RnsContext& ctx, const RnsPoly& d_coeff,
                                      const KeySwitchKey& key) {
  const int level = static_cast<int>(d_coeff.num_limbs()) - 1;
  const auto ext = ctx.LevelModuli(level, true);
  const size_t n = ctx.n();
  RnsPoly acc0(n, ext);
  RnsPoly acc1(n, ext);
  std::vector<uint64_t> digit(n);
  for (int i = 0; i <= level; ++i) {
    auto src = d_coeff.limb(static_cast<size_t>(i));
    for (size_t t = 0; t < ext.size(); ++t) {
      const uint32_t mod = ext[t];
      const Modulus& q = ctx.modulus(mod);
      if (mod == static_cast<uint32_t>(i)) {
        std::copy(src.begin(), src.end(), digit.begin());
      } else {
        for (size_t k = 0; k < n; ++k) {
          digit[k] = ctx.SwitchModulus(src[k], static_cast<uint32_t>(i), mod);
        }
      }
      ctx.ntt(mod).Forward(digit);
      // Key polynomials span every modulus; limb index equals modulus index.
      auto kb = key.b[static_cast<size_t>(i)].limb(mod);
      auto ka = key.a[static_cast<size_t>(i)].limb(mod);
      auto a0 = acc0.limb(t);
      auto a1 = acc1.limb(t);
      for (size_t k = 0; k < n; ++k) {
        a0[k] = q.Add(a0[k], q.Mul(digit[k], kb[k]));
        a1[k] = q.Add(a1[k], q.Mul(digit[k], ka[k]));
      }
    }
  }
  return {ctx.DivideAndRoundLast(acc0), ctx.DivideAndRoundLast(acc1)};
}

std::shared_ptr<const he::Evaluator> MakeCkksEvaluator(std::shared_ptr<const RnsContext> ctx,
                                                       std::shared_ptr<const EvaluationKeys> keys) {
  return std::make_shared<CkksEvaluator>(std::move(ctx), std::move(keys));
}

std::shared_ptr<const he::Encryptor> MakeCkksEncryptor(std::shared_ptr<const RnsContext> ctx,
                                                       std::shared_ptr<const PublicKey> key,
                                                       uint64_t seed) {
  return std::make_shared<CkksEncryptor>(std::move(ctx), std::move(key), seed);
}

std::shared_ptr<const he::Decryptor> MakeCkksDecryptor(std::shared_ptr<const RnsContext> ctx,
                                                       std::shared_ptr<const SecretKey> key,
                                                       he::DecryptMode mode) {
  return std::make_shared<CkksDecryptor>(std::move(ctx), std::move(key), mode);
}

he::Backend MakeCkksBackend(std::shared_ptr<const RnsContext> ctx, const KeySet& keys,
                            he::DecryptMode mode) {
  he::Backend b;
  b.kind = he::BackendKind::kCkks;
  b.evaluator = MakeCkksEvaluator(ctx, keys.eval);
  // Encryption stream is derived from, but distinct from, the keygen stream.
  b.encryptor = MakeCkksEncryptor(ctx, keys.pub, keys.seed ^ 0x9e3779b97f4a7c15ULL);
  b.decryptor = MakeCkksDecryptor(ctx, keys.secret, mode);
  return b;
}

he::Backend MakeCkksBackend(const he::BackendParams& params, const std::vector<int>& rotation_steps,
                            uint64_t seed, he::DecryptMode mode) {
  auto ctx = RnsContext::Create(params);
  return MakeCkksBackend(ctx, KeyGen(ctx, rotation_steps, seed), mode);
}

}  // namespace pfip::ckks
