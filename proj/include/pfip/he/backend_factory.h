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

#ifndef PFIP_HE_BACKEND_FACTORY_H_
#define PFIP_HE_BACKEND_FACTORY_H_

#include <cstdint>
#include <vector>

#include "pfip/he/backend.h"

namespace pfip::he {

// Oracle or CKKS bundle for `params`, with rotation keys for `rotation_steps`.
// The seed drives CKKS key generation and encryption; the oracle ignores it.
Backend MakeBackend(BackendKind kind, const BackendParams& params,
                    const std::vector<int>& rotation_steps, uint64_t seed,
                    DecryptMode mode = DecryptMode::kStrict);

}  // namespace pfip::he

#endif  // PFIP_HE_BACKEND_FACTORY_H_
