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

#ifndef PFIP_HE_PARAMS_H_
#define PFIP_HE_PARAMS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pfip::he {

// Parameter set shared by every backend. The last entry of
// `coeff_modulus_bits` is the key-switching (special) modulus; the others form
// the ciphertext modulus chain, so a fresh ciphertext sits at level
// coeff_modulus_bits.size() - 2.
struct BackendParams {
  std::string name;
  uint64_t poly_degree = 0;
  std::vector<int> coeff_modulus_bits;
  int scale_bits = 30;
  bool toy = false;

  size_t slot_count() const { return static_cast<size_t>(poly_degree / 2); }
  int top_level() const { return static_cast<int>(coeff_modulus_bits.size()) - 2; }
  int logq() const;
  double nominal_scale() const;

  // Throws kInvalidArgument when the degree or modulus chain is unusable.
  void Validate() const;

  bool operator==(const BackendParams&) const = default;
};

// Named presets: "divided-32768", "complete-8192", and "toy-<degree>"
// (chain {40, 30, 40}, scale 2^30, any power of two >= 8).
BackendParams Preset(std::string_view name);

BackendParams ToyParams(uint64_t poly_degree,
                        std::vector<int> coeff_modulus_bits = {40, 30, 40},
                        int scale_bits = 30);

}  // namespace pfip::he

#endif  // PFIP_HE_PARAMS_H_
