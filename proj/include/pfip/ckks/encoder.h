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

#ifndef PFIP_CKKS_ENCODER_H_
#define PFIP_CKKS_ENCODER_H_

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "pfip/ckks/rns_context.h"
#include "pfip/he/backend.h"

namespace pfip::ckks {

// Canonical-embedding encoder for real slot vectors. Slot j is the value of
// the message polynomial at zeta^(5^j), zeta = exp(i*pi/n), so the
// automorphism X -> X^(5^k) rotates slots left by k.
class Encoder {
 public:
  explicit Encoder(std::shared_ptr<const RnsContext> ctx);

  // Returns the NTT-form plaintext at `level`. Throws kOverflow when
  // max|v| * scale would not fit below q_0 / 2.
  RnsPoly Encode(std::span<const double> slots, double scale, int level) const;

  // Decodes an NTT-form polynomial at any level.
  he::SlotVector Decode(const RnsPoly& ntt_poly, double scale) const;

  // Integer coefficient vector (length n) for a real slot vector, before
  // reduction; exposed for tests.
  std::vector<double> EmbedInverse(std::span<const double> slots) const;
  // Real parts of the slot values of a real coefficient vector.
  he::SlotVector Embed(std::span<const double> coeffs) const;

 private:
  void SpecialFft(std::vector<std::complex<double>>& vals) const;
  void SpecialFftInverse(std::vector<std::complex<double>>& vals) const;

  std::shared_ptr<const RnsContext> ctx_;
  size_t slots_;
  std::vector<size_t> rot_group_;
  std::vector<std::complex<double>> ksi_;
  std::vector<size_t> bit_rev_;
};

}  // namespace pfip::ckks

#endif  // PFIP_CKKS_ENCODER_H_
