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

#include "pfip/he/params.h"

#include <bit>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include "pfip/common/error.h"

namespace pfip::he {

int BackendParams::logq() const {
  return std::accumulate(coeff_modulus_bits.begin(), coeff_modulus_bits.end(), 0);
}

double BackendParams::nominal_scale() const { return std::ldexp(1.0, scale_bits); }

void BackendParams::Validate() const {
  Check(std::has_single_bit(poly_degree), ErrorCode::kInvalidArgument,
        "poly_degree must be a power of two");
  if (toy) {
    Check(poly_degree >= 8, ErrorCode::kInvalidArgument, "toy poly_degree must be >= 8");
  } else {
    Check(poly_degree >= 4096 && poly_degree <= 32768, ErrorCode::kInvalidArgument,
          "named presets use poly_degree in {2^12, ..., 2^15}");
  }
  Check(coeff_modulus_bits.size() >= 2, ErrorCode::kInvalidArgument,
        "need at least one ciphertext prime and one special prime");
  for (int bits : coeff_modulus_bits) {
    Check(bits >= 20 && bits <= 60, ErrorCode::kInvalidArgument,
          "modulus bit sizes must lie in [20, 60]");
  }
  Check(scale_bits >= 10 && scale_bits < coeff_modulus_bits.front() + 30,
        ErrorCode::kInvalidArgument, "scale_bits out of range");
}

BackendParams ToyParams(uint64_t poly_degree, std::vector<int> coeff_modulus_bits,
                        int scale_bits) {
  BackendParams p;
  p.name = "toy-" + std::to_string(poly_degree);
  p.poly_degree = poly_degree;
  p.coeff_modulus_bits = std::move(coeff_modulus_bits);
  p.scale_bits = scale_bits;
  p.toy = true;
  p.Validate();
  return p;
}

BackendParams Preset(std::string_view name) {
  BackendParams p;
  if (name == "divided-32768") {
    p.poly_degree = 32768;
  } else if (name == "complete-8192") {
    p.poly_degree = 8192;
  } else if (name.starts_with("toy-")) {
    uint64_t degree = 0;
    auto digits = name.substr(4);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), degree);
    Check(ec == std::errc() && ptr == digits.data() + digits.size(), ErrorCode::kConfig,
          "bad toy preset name '" + std::string(name) + "'");
    return ToyParams(degree);
  } else {
    Fail(ErrorCode::kConfig, "unknown params preset '" + std::string(name) + "'");
  }
  p.name = std::string(name);
  p.coeff_modulus_bits = {40, 30, 40};
  p.scale_bits = 30;
  p.toy = false;
  p.Validate();
  return p;
}

}  // namespace pfip::he
