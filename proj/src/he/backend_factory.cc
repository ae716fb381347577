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

#include "pfip/he/backend_factory.h"

#include "pfip/ckks/ckks_backend.h"
#include "pfip/he/oracle_backend.h"

namespace pfip::he {

Backend MakeBackend(BackendKind kind, const BackendParams& params,
                    const std::vector<int>& rotation_steps, uint64_t seed, DecryptMode mode) {
  if (kind == BackendKind::kOracle) return MakeOracleBackend(params, rotation_steps, mode);
  return ckks::MakeCkksBackend(params, rotation_steps, seed, mode);
}

}  // namespace pfip::he
