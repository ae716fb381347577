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

#ifndef PFIP_CKKS_KEYS_H_
#define PFIP_CKKS_KEYS_H_

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <vector>

#include "pfip/ckks/rns_context.h"
#include "pfip/he/backend.h"

namespace pfip::ckks {

// All key polynomials are in NTT form over every modulus, special prime
// included.
struct SecretKey {
  RnsPoly s;
};

struct PublicKey {
  RnsPoly b;  // -a*s + e
  RnsPoly a;
};

// One (b_i, a_i) pair per ciphertext prime q_i, with
// b_i = -a_i*s + e_i + [P * s' on limb i only].
struct KeySwitchKey {
  std::vector<RnsPoly> b;
  std::vector<RnsPoly> a;
};

struct EvaluationKeys {
  KeySwitchKey relin;
  std::map<int, KeySwitchKey> galois;  // keyed by left-rotation step
};

struct KeySet {
  std::shared_ptr<const SecretKey> secret;
  std::shared_ptr<const PublicKey> pub;
  std::shared_ptr<const EvaluationKeys> eval;
  uint64_t seed = 0;
};

// Centered discrete Gaussian with sigma = 3.2 (truncated at 6 sigma),
// uniform ternary, and uniform-mod-q sampling over an RNS basis.
class Sampler {
 public:
  explicit Sampler(uint64_t seed) : rng_(seed) {}

  RnsPoly Ternary(const RnsContext& ctx, const std::vector<uint32_t>& moduli);
  RnsPoly Gaussian(const RnsContext& ctx, const std::vector<uint32_t>& moduli);
  RnsPoly Uniform(const RnsContext& ctx, const std::vector<uint32_t>& moduli);

  static constexpr double kSigma = 3.2;

 private:
  RnsPoly FromSigned(const RnsContext& ctx, const std::vector<uint32_t>& moduli,
                     const std::vector<int64_t>& coeffs);
  std::mt19937_64 rng_;
};

// Generates secret, public, relinearization, and Galois keys for the given
// left-rotation steps. Deterministic in `seed`. Steps must lie in (0, S).
KeySet KeyGen(std::shared_ptr<const RnsContext> ctx, const std::vector<int>& rotation_steps,
              uint64_t seed);

// Secret key coefficients in centered form (test helper).
std::vector<int64_t> SecretKeyCoefficients(const RnsContext& ctx, const SecretKey& sk);

}  // namespace pfip::ckks

#endif  // PFIP_CKKS_KEYS_H_
