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

#include "pfip/he/backend.h"

#include <cmath>
#include <string>

namespace pfip::he {

Evaluator::Evaluator(BackendParams params) : params_(std::move(params)) {}

bool Evaluator::IsNormalizedScale(double scale) const {
  const double ratio = scale / params_.nominal_scale();
  return ratio > 0.5 && ratio < 2.0;
}

void Evaluator::CheckOwned(const CipherHandle& c) const {
  Check(c.valid(), ErrorCode::kInvalidArgument, "empty ciphertext handle");
  Check(c.params_id() == params_id(), ErrorCode::kParamsMismatch,
        "ciphertext was produced under different parameters");
}

void Evaluator::CheckBinary(const CipherHandle& a, const CipherHandle& b) const {
  CheckOwned(a);
  CheckOwned(b);
  Check(a.level() == b.level(), ErrorCode::kLevelMismatch,
        "operands at levels " + std::to_string(a.level()) + " and " + std::to_string(b.level()));
  Check(std::abs(a.scale() - b.scale()) <= 1e-9 * a.scale(), ErrorCode::kScaleMismatch,
        "operand scales differ");
}

void Evaluator::CheckMultiplicable(const CipherHandle& a, const CipherHandle& b) const {
  CheckBinary(a, b);
  Check(a.level() >= 1, ErrorCode::kDepthExhausted, "no level left to rescale into");
  Check(IsNormalizedScale(a.scale()), ErrorCode::kScaleNotNormalized,
        "multiplying a product that was not rescaled");
}

CipherHandle Evaluator::Add(const CipherHandle& a, const CipherHandle& b) const {
  CheckBinary(a, b);
  add_.fetch_add(1, std::memory_order_relaxed);
  return DoAdd(a, b, false);
}

CipherHandle Evaluator::Sub(const CipherHandle& a, const CipherHandle& b) const {
  CheckBinary(a, b);
  sub_.fetch_add(1, std::memory_order_relaxed);
  return DoAdd(a, b, true);
}

CipherHandle Evaluator::Multiply(const CipherHandle& a, const CipherHandle& b) const {
  CheckMultiplicable(a, b);
  mul_.fetch_add(1, std::memory_order_relaxed);
  rescale_.fetch_add(1, std::memory_order_relaxed);
  return DoRescale(DoMultiply(a, b));
}

CipherHandle Evaluator::MultiplyNoRescale(const CipherHandle& a, const CipherHandle& b) const {
  CheckMultiplicable(a, b);
  mul_.fetch_add(1, std::memory_order_relaxed);
  return DoMultiply(a, b);
}

CipherHandle Evaluator::Rescale(const CipherHandle& a) const {
  CheckOwned(a);
  Check(a.level() >= 1, ErrorCode::kDepthExhausted, "cannot rescale at level 0");
  rescale_.fetch_add(1, std::memory_order_relaxed);
  return DoRescale(a);
}

CipherHandle Evaluator::Rotate(const CipherHandle& a, int steps) const {
  CheckOwned(a);
  const auto slots = static_cast<int>(params_.slot_count());
  Check(steps > 0 && steps < slots, ErrorCode::kInvalidArgument,
        "rotation steps must lie in (0, S), got " + std::to_string(steps));
  Check(HasRotationKey(steps), ErrorCode::kMissingKey,
        "no rotation key for step " + std::to_string(steps));
  rotate_.fetch_add(1, std::memory_order_relaxed);
  return DoRotate(a, steps);
}

CipherHandle Evaluator::Zero(int level) const {
  Check(level >= 0 && level <= params_.top_level(), ErrorCode::kInvalidArgument, "bad level");
  return DoZero(level);
}

OpCounts Evaluator::counts() const {
  return {add_.load(), sub_.load(), mul_.load(), rotate_.load(), rescale_.load()};
}

void Evaluator::ResetCounts() const {
  add_ = 0;
  sub_ = 0;
  mul_ = 0;
  rotate_ = 0;
  rescale_ = 0;
}

CipherHandle Encryptor::Encrypt(std::span<const double> v) const {
  Check(v.size() == params_.slot_count(), ErrorCode::kInvalidArgument,
        "slot vector has length " + std::to_string(v.size()) + ", expected " +
            std::to_string(params_.slot_count()));
  for (double x : v) {
    Check(std::isfinite(x), ErrorCode::kInvalidArgument, "slot vector holds a non-finite value");
  }
  return DoEncrypt(v);
}

SlotVector Decryptor::Decrypt(const CipherHandle& c) const {
  Check(c.valid(), ErrorCode::kInvalidArgument, "empty ciphertext handle");
  Check(c.params_id() == params_id(), ErrorCode::kParamsMismatch,
        "ciphertext was produced under different parameters");
  if (mode_ == DecryptMode::kStrict) {
    const double ratio = c.scale() / params_.nominal_scale();
    Check(ratio > 0.5 && ratio < 2.0, ErrorCode::kScaleNotNormalized,
          "decrypting a handle whose scale is not the nominal scale");
  }
  return DoDecrypt(c);
}

std::string_view BackendKindName(BackendKind kind) {
  return kind == BackendKind::kOracle ? "oracle" : "ckks";
}

BackendKind ParseBackendKind(std::string_view name) {
  if (name == "oracle") return BackendKind::kOracle;
  if (name == "ckks") return BackendKind::kCkks;
  Fail(ErrorCode::kConfig, "unknown backend '" + std::string(name) + "'");
}

std::vector<int> PowerOfTwoSteps(size_t slot_count) {
  std::vector<int> steps;
  for (size_t s = 1; s < slot_count; s <<= 1) steps.push_back(static_cast<int>(s));
  return steps;
}

}  // namespace pfip::he
