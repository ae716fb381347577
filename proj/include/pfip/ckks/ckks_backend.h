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

#ifndef PFIP_CKKS_CKKS_BACKEND_H_
#define PFIP_CKKS_CKKS_BACKEND_H_

#include <memory>
#include <utility>
#include <vector>

#include "pfip/ckks/encoder.h"
#include "pfip/ckks/keys.h"
#include "pfip/ckks/rns_context.h"
#include "pfip/he/backend.h"

namespace pfip::ckks {

// Two-component RLWE ciphertext in NTT form over q_0..q_level.
struct Ciphertext final : he::CipherBody {
  RnsPoly c0;
  RnsPoly c1;
};

// Hybrid key switching with one digit per ciphertext prime and the special
// prime P: returns (u0, u1) with u0 + u1*s ~= d*s' over q_0..q_level, where
// the key encrypts s'. `d_coeff` is in coefficient form.
std::pair<RnsPoly, RnsPoly> KeySwitch(const RnsContext& ctx, const RnsPoly& d_coeff,
                                      const KeySwitchKey& key);

std::shared_ptr<const he::Evaluator> MakeCkksEvaluator(std::shared_ptr<const RnsContext> ctx,
                                                       std::shared_ptr<const EvaluationKeys> keys);

// Encryption randomness comes from a generator seeded with `seed`.
std::shared_ptr<const he::Encryptor> MakeCkksEncryptor(std::shared_ptr<const RnsContext> ctx,
                                                       std::shared_ptr<const PublicKey> key,
                                                       uint64_t seed);

std::shared_ptr<const he::Decryptor> MakeCkksDecryptor(std::shared_ptr<const RnsContext> ctx,
                                                       std::shared_ptr<const SecretKey> key,
                                                       he::DecryptMode mode);

he::Backend MakeCkksBackend(std::shared_ptr<const RnsContext> ctx, const KeySet& keys,
                            he::DecryptMode mode = he::DecryptMode::kStrict);

// Builds the context, runs KeyGen(seed), and wires the three roles.
he::Backend MakeCkksBackend(const he::BackendParams& params, const std::vector<int>& rotation_steps,
                            uint64_t seed, he::DecryptMode mode = he::DecryptMode::kStrict);

}  // namespace pfip::ckks

#endif  // PFIP_CKKS_CKKS_BACKEND_H_
