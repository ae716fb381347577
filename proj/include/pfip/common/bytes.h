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

#ifndef PFIP_COMMON_BYTES_H_
#define PFIP_COMMON_BYTES_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pfip/common/error.h"

namespace pfip {

// Little-endian append-only encoder.
class ByteWriter {
 public:
  void PutU8(uint8_t v) { buf_.push_back(v); }
  void PutU16(uint16_t v) { PutLe(v, 2); }
  void PutU32(uint32_t v) { PutLe(v, 4); }
  void PutU64(uint64_t v) { PutLe(v, 8); }
  void PutF64(double v) { PutU64(std::bit_cast<uint64_t>(v)); }
  void PutRaw(std::span<const uint8_t> bytes) {
    buf_.insert(buf_.end(), bytes.begin(), bytes.end());
  }
  void PutRaw(std::string_view s) { buf_.insert(buf_.end(), s.begin(), s.end()); }
  void PutString(std::string_view s) {
    PutU32(static_cast<uint32_t>(s.size()));
    PutRaw(s);
  }
  void PutBlob(std::span<const uint8_t> bytes) {
    PutU64(bytes.size());
    PutRaw(bytes);
  }
  void PutWords(std::span<const uint64_t> words) {
    for (uint64_t w : words) PutU64(w);
  }

  const std::vector<uint8_t>& bytes() const& { return buf_; }
  std::vector<uint8_t> Take() && { return std::move(buf_); }

 private:
  void PutLe(uint64_t v, int n) {
    for (int i = 0; i < n; ++i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  std::vector<uint8_t> buf_;
};

// Bounds-checked little-endian decoder; every short read is kTruncated.
class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  uint8_t GetU8() { return static_cast<uint8_t>(GetLe(1)); }
  uint16_t GetU16() { return static_cast<uint16_t>(GetLe(2)); }
  uint32_t GetU32() { return static_cast<uint32_t>(GetLe(4)); }
  uint64_t GetU64() { return GetLe(8); }
  double GetF64() { return std::bit_cast<double>(GetU64()); }
  std::span<const uint8_t> GetRaw(size_t n) {
    Need(n);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::string GetString() {
    uint32_t n = GetU32();
    auto raw = GetRaw(n);
    return std::string(raw.begin(), raw.end());
  }
  std::vector<uint8_t> GetBlob() {
    uint64_t n = GetU64();
    auto raw = GetRaw(n);
    return std::vector<uint8_t>(raw.begin(), raw.end());
  }
  void GetWords(std::span<uint64_t> out) {
    Need(out.size() * 8);
    for (auto& w : out) w = GetLe(8);
  }

  size_t remaining() const { return bytes_.size() - pos_; }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void Need(size_t n) const {
    if (n > remaining()) Fail(ErrorCode::kTruncated, "payload ends early");
  }
  uint64_t GetLe(int n) {
    Need(static_cast<size_t>(n));
    uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<uint64_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += n;
    return v;
  }

  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
};

}  // namespace pfip

#endif  // PFIP_COMMON_BYTES_H_
