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

#ifndef PFIP_HE_ORACLE_BACKEND_H_
#define PFIP_HE_ORACLE_BACKEND_H_

#include <vector>

#include "pfip/he/backend.h"

namespace pfip::he {

// Noise-free reference backend. Slots are stored in the clear and every
// operation is exact slot-wise arithmetic, while levels, scales, rotation-key
// availability, and operation counts follow the same rules as the CKKS
// backend (each prime taken as exactly 2^bits). Used for differential tests
// and for fast protocol simulation.
Backend MakeOracleBackend(const BackendParams& params, std::vector<int> rotation_steps,
                          DecryptMode mode = DecryptMode::kStrict);

uint64_t OracleParamsId(const BackendParams& params);

}  // namespace pfip::he

#endif  // PFIP_HE_ORACLE_BACKEND_H_
