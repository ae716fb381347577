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

#ifndef PFIP_CKKS_RNS_CONTEXT_H_
#define PFIP_CKKS_RNS_CONTEXT_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "pfip/ckks/modulus.h"
#include "pfip/ckks/ntt.h"
#include "pfip/he/params.h"

namespace pfip::ckks {

// Polynomial in RNS form: one limb of n words per modulus. `moduli` holds
// indices into the owning RnsContext; limbs are stored contiguously.
struct RnsPoly {
  size_t n = 0;
  std::vector<uint32_t> moduli;
  std::vector<uint64_t> data;

  RnsPoly() = default;
  RnsPoly(size_t degree, std::vector<uint32_t> mods)
      : n(degree), moduli(std::move(mods)), data(n * moduli.size(), 0) {}

  size_t num_limbs() const { return moduli.size(); }
  std::span<uint64_t> limb(size_t i) { return {data.data() + i * n, n}; }
  std::span<const uint64_t> limb(size_t i) const { return {data.data() + i * n, n}; }

  bool operator==(const RnsPoly&) const = default;
};

// Modulus chain q_0, ..., q_L plus the special prime P (index L + 1), with NTT
// tables and the constants needed for rescaling and key switching.
class RnsContext {
 public:
  static std::shared_ptr<const RnsContext> Create(const he::BackendParams& params);

  const he::BackendParams& params() const { return params_; }
  size_t n() const { return n_; }
  int top_level() const { return static_cast<int>(moduli_.size()) - 2; }
  uint32_t special_index() const { return static_cast<uint32_t>(moduli_.size() - 1); }
  size_t num_moduli() const { return moduli_.size(); }

  const Modulus& modulus(uint32_t i) const { return moduli_[i]; }
  const NttTables& ntt(uint32_t i) const { return ntt_[i]; }
  std::vector<uint64_t> primes() const;

  // Fingerprint of (backend, degree, primes, scale bits).
  uint64_t params_id() const { return params_id_; }

  // Moduli indices {0..level}, optionally followed by the special prime.
  std::vector<uint32_t> LevelModuli(int level, bool with_special) const;

  // q_i^{-1} mod q_j (i, j may include the special index).
  uint64_t InverseMod(uint32_t i, uint32_t j) const { return inv_[i * moduli_.size() + j]; }

  // Galois element 5^steps mod 2n for a left rotation by `steps` slots.
  uint64_t GaloisElement(int steps) const;

  void ToNtt(RnsPoly& p) const;
  void FromNtt(RnsPoly& p) const;

  // Coefficient-domain automorphism X -> X^elt on every limb.
  RnsPoly ApplyGalois(const RnsPoly& coeff_poly, uint64_t elt) const;

  // Lifts x in [0, q_src) to its centered representative and reduces it
  // modulo q_dst.
  uint64_t SwitchModulus(uint64_t x, uint32_t src, uint32_t dst) const {
    const uint64_t q = moduli_[src].value();
    if (x > q / 2) return moduli_[dst].FromSigned(-static_cast<int64_t>(q - x));
    return moduli_[dst].ReduceWord(x);
  }

  // Drops the last limb of `p` (NTT form), dividing by its modulus with
  // rounding: out_j = (p_j - [p_last]_{q_j}) * q_last^{-1} mod q_j.
  RnsPoly DivideAndRoundLast(const RnsPoly& p) const;

 private:
  explicit RnsContext(const he::BackendParams& params);

  he::BackendParams params_;
  size_t n_;
  std::vector<Modulus> moduli_;
  std::vector<NttTables> ntt_;
  std::vector<uint64_t> inv_;
  uint64_t params_id_ = 0;
};

// Limb-wise arithmetic; operands must share moduli and representation.
void AddInPlace(const RnsContext& ctx, RnsPoly& a, const RnsPoly& b);
void SubInPlace(const RnsContext& ctx, RnsPoly& a, const RnsPoly& b);
void NegateInPlace(const RnsContext& ctx, RnsPoly& a);
// Pointwise product (NTT form).
RnsPoly Multiply(const RnsContext& ctx, const RnsPoly& a, const RnsPoly& b);
void MultiplyAccumulate(const RnsContext& ctx, RnsPoly& acc, const RnsPoly& a, const RnsPoly& b);

// Restricts a polynomial to the given moduli (which must be a subset of its
// own, in order-preserving fashion).
RnsPoly Restrict(const RnsPoly& p, const std::vector<uint32_t>& moduli);

}  // namespace pfip::ckks

#endif  // PFIP_CKKS_RNS_CONTEXT_H_
