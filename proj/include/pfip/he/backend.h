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

#ifndef PFIP_HE_BACKEND_H_
#define PFIP_HE_BACKEND_H_

#include <atomic>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "pfip/common/error.h"
#include "pfip/he/params.h"

namespace pfip::he {

// Plaintext SIMD payload of one ciphertext; length is the slot count.
using SlotVector = std::vector<double>;

// Backend-specific ciphertext contents. Never mutated after construction.
class CipherBody {
 public:
  virtual ~CipherBody() = default;
};

// Immutable, cheaply copyable reference to a ciphertext plus its level/scale
// bookkeeping. Copies share the same body.
class CipherHandle {
 public:
  CipherHandle() = default;
  CipherHandle(std::shared_ptr<const CipherBody> body, int level, double scale,
               uint64_t params_id)
      : body_(std::move(body)), level_(level), scale_(scale), params_id_(params_id) {}

  bool valid() const { return body_ != nullptr; }
  int level() const { return level_; }
  double scale() const { return scale_; }
  uint64_t params_id() const { return params_id_; }

  template <typename T>
  const T& body_as() const {
    auto* p = dynamic_cast<const T*>(body_.get());
    Check(p != nullptr, ErrorCode::kParamsMismatch, "ciphertext belongs to another backend");
    return *p;
  }

 private:
  std::shared_ptr<const CipherBody> body_;
  int level_ = 0;
  double scale_ = 0;
  uint64_t params_id_ = 0;
};

struct OpCounts {
  uint64_t add = 0;
  uint64_t sub = 0;
  uint64_t mul = 0;
  uint64_t rotate = 0;
  uint64_t rescale = 0;

  OpCounts operator-(const OpCounts& o) const {
    return {add - o.add, sub - o.sub, mul - o.mul, rotate - o.rotate, rescale - o.rescale};
  }
  OpCounts operator+(const OpCounts& o) const {
    return {add + o.add, sub + o.sub, mul + o.mul, rotate + o.rotate, rescale + o.rescale};
  }
  bool operator==(const OpCounts&) const = default;
};

// Evaluation contract. Holds only public evaluation material (relinearization
// and rotation keys), so it may be handed to the computation server. Rotation
// is a cyclic LEFT shift: Rotate(v, k)[j] = v[(j + k) mod S].
//
// All methods are const and thread-safe; the operation counters are atomic.
class Evaluator {
 public:
  explicit Evaluator(BackendParams params);
  virtual ~Evaluator() = default;
  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  const BackendParams& params() const { return params_; }
  virtual uint64_t params_id() const = 0;
  virtual std::string_view backend_name() const = 0;

  CipherHandle Add(const CipherHandle& a, const CipherHandle& b) const;
  CipherHandle Sub(const CipherHandle& a, const CipherHandle& b) const;

  // Multiply, relinearize, and rescale by one prime.
  CipherHandle Multiply(const CipherHandle& a, const CipherHandle& b) const;

  // Multiply and relinearize only. The result stays at the operands' level
  // with the squared scale; Rescale() must follow before strict decryption.
  CipherHandle MultiplyNoRescale(const CipherHandle& a, const CipherHandle& b) const;

  CipherHandle Rescale(const CipherHandle& a) const;
  CipherHandle Rotate(const CipherHandle& a, int steps) const;

  // Transparent encryption of zero at the nominal scale. Not counted.
  CipherHandle Zero(int level) const;

  virtual bool HasRotationKey(int steps) const = 0;

  virtual std::vector<uint8_t> Serialize(const CipherHandle& c) const = 0;
  virtual CipherHandle Deserialize(std::span<const uint8_t> bytes) const = 0;

  OpCounts counts() const;
  void ResetCounts() const;

  bool IsNormalizedScale(double scale) const;

 protected:
  virtual CipherHandle DoAdd(const CipherHandle& a, const CipherHandle& b,
                             bool subtract) const = 0;
  virtual CipherHandle DoMultiply(const CipherHandle& a, const CipherHandle& b) const = 0;
  virtual CipherHandle DoRescale(const CipherHandle& a) const = 0;
  virtual CipherHandle DoRotate(const CipherHandle& a, int steps) const = 0;
  virtual CipherHandle DoZero(int level) const = 0;

  void CheckOwned(const CipherHandle& c) const;

 private:
  void CheckBinary(const CipherHandle& a, const CipherHandle& b) const;
  void CheckMultiplicable(const CipherHandle& a, const CipherHandle& b) const;

  BackendParams params_;
  mutable std::atomic<uint64_t> add_{0};
  mutable std::atomic<uint64_t> sub_{0};
  mutable std::atomic<uint64_t> mul_{0};
  mutable std::atomic<uint64_t> rotate_{0};
  mutable std::atomic<uint64_t> rescale_{0};
};

// Public-key encryption; safe to give to edge devices.
class Encryptor {
 public:
  explicit Encryptor(BackendParams params) : params_(std::move(params)) {}
  virtual ~Encryptor() = default;

  const BackendParams& params() const { return params_; }

  // Encrypts at the top level and nominal scale. Requires len(v) = S and
  // finite entries.
  CipherHandle Encrypt(std::span<const double> v) const;

 protected:
  virtual CipherHandle DoEncrypt(std::span<const double> v) const = 0;

 private:
  BackendParams params_;
};

enum class DecryptMode { kStrict, kLenient };

// Secret-key decryption; only the authentication server holds one. A wrong
// key is not detectable and yields garbage slots.
class Decryptor {
 public:
  Decryptor(BackendParams params, DecryptMode mode) : params_(std::move(params)), mode_(mode) {}
  virtual ~Decryptor() = default;

  const BackendParams& params() const { return params_; }
  DecryptMode mode() const { return mode_; }

  // In strict mode a handle whose scale was not brought back to the nominal
  // scale (a product that skipped Rescale) is rejected with
  // kScaleNotNormalized.
  SlotVector Decrypt(const CipherHandle& c) const;

 protected:
  virtual uint64_t params_id() const = 0;
  virtual SlotVector DoDecrypt(const CipherHandle& c) const = 0;

 private:
  BackendParams params_;
  DecryptMode mode_;
};

enum class BackendKind { kOracle, kCkks };

std::string_view BackendKindName(BackendKind kind);
BackendKind ParseBackendKind(std::string_view name);

// A full key bundle. Roles receive only the parts they are entitled to.
struct Backend {
  BackendKind kind = BackendKind::kOracle;
  std::shared_ptr<const Evaluator> evaluator;
  std::shared_ptr<const Encryptor> encryptor;
  std::shared_ptr<const Decryptor> decryptor;
};

// Rotation steps {1, 2, 4, ..., S/2}.
std::vector<int> PowerOfTwoSteps(size_t slot_count);

}  // namespace pfip::he

#endif  // PFIP_HE_BACKEND_H_
