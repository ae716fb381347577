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

#ifndef PFIP_CKKS_NTT_H_
#define PFIP_CKKS_NTT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pfip/ckks/modulus.h"

namespace pfip::ckks {

// Negacyclic number-theoretic transform over Z_q[X]/(X^n + 1).
// Forward output is in bit-reversed evaluation order, which is all pointwise
// multiplication needs; Inverse undoes it exactly.
class NttTables {
 public:
  NttTables(size_t n, const Modulus& q);

  size_t n() const { return n_; }
  const Modulus& modulus() const { return q_; }

  void Forward(std::span<uint64_t> a) const;
  void Inverse(std::span<uint64_t> a) const;

 private:
  size_t n_;
  Modulus q_;
  std::vector<uint64_t> psi_rev_;
  std::vector<uint64_t> psi_rev_shoup_;
  std::vector<uint64_t> psi_inv_rev_;
  std::vector<uint64_t> psi_inv_rev_shoup_;
  uint64_t n_inv_;
  uint64_t n_inv_shoup_;
};

// Schoolbook negacyclic product, O(n^2). Test oracle for the NTT path.
std::vector<uint64_t> NegacyclicMultiplySchoolbook(std::span<const uint64_t> a,
                                                   std::span<const uint64_t> b,
                                                   const Modulus& q);

}  // namespace pfip::ckks

#endif  // PFIP_CKKS_NTT_H_
