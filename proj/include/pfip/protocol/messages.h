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

#ifndef PFIP_PROTOCOL_MESSAGES_H_
#define PFIP_PROTOCOL_MESSAGES_H_

#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace pfip::protocol {

using Bytes = std::vector<uint8_t>;

// Edge -> CS. `full` encrypts the zero-padded full feature under the complete
// parameters; `packed` encrypts PadForEnroll(f_m, block) under the divided
// parameters. `baseline` (full feature padded into `baseline_block` of a
// width-d layout) is present only when the gallery keeps baseline bins.
struct EnrollRequest {
  std::string id;
  uint64_t block = 0;
  Bytes full;
  Bytes packed;
  std::optional<Bytes> baseline;
  uint64_t baseline_block = 0;
  bool operator==(const EnrollRequest&) const = default;
};

// CS -> edge.
struct EnrollAck {
  uint64_t new_counter = 0;
  uint64_t bin_index = 0;
  uint64_t block_index = 0;
  bool operator==(const EnrollAck&) const = default;
};

// Edge -> CS. `packed` is the replicated decomposed probe (divided params),
// `full` the zero-padded full probe (complete params). `baseline` holds the
// full probe replicated in width-d blocks for exhaustive search.
struct IdentifyRequest {
  Bytes packed;
  Bytes full;
  std::optional<Bytes> baseline;
  bool operator==(const IdentifyRequest&) const = default;
};

struct BinScores {
  Bytes ct;
  uint64_t occupancy = 0;
  std::vector<std::string> slot_map;
  bool operator==(const BinScores&) const = default;
};

// CS -> AS. One score ciphertext per bin, in bin order, plus the plaintext
// bin metadata needed to map blocks back to ids.
struct PreselectResult {
  std::vector<BinScores> bins;
  uint64_t width = 0;
  bool operator==(const PreselectResult&) const = default;
};

// AS -> CS. Ids only; no scores leave the AS.
struct CandidateSet {
  std::vector<std::string> ids;
  bool operator==(const CandidateSet&) const = default;
};

struct FineEntry {
  std::string id;
  Bytes ct;
  bool operator==(const FineEntry&) const = default;
};

// CS -> AS.
struct FineResult {
  std::vector<FineEntry> entries;
  bool operator==(const FineResult&) const = default;
};

// AS -> edge. `id` is empty on no-match.
struct Decision {
  std::optional<std::string> id;
  double score = 0;
  std::string reason;
  bool matched() const { return id.has_value(); }
  bool operator==(const Decision&) const = default;
};

using Message = std::variant<EnrollRequest, EnrollAck, IdentifyRequest, PreselectResult,
                             CandidateSet, FineResult, Decision>;

inline constexpr uint16_t kMessageVersion = 1;

std::string_view MessageName(const Message& m);

// Frame layout: u64 body length, then body = "PFIPMSG" | u16 version |
// u8 variant tag | payload. All integers little-endian.
Bytes EncodeFrame(const Message& m);

// Decodes exactly one frame; trailing bytes are kCorrupt.
Message DecodeFrame(std::span<const uint8_t> frame);

// FIFO of serialized frames between two roles.
class InMemoryChannel {
 public:
  void Send(Bytes frame);
  Bytes Receive();
  size_t pending() const;

 private:
  mutable std::mutex mu_;
  std::deque<Bytes> frames_;
};

// Boundary between role logic and the wire. A networked deployment would
// implement Carry by sending the frame and decoding the peer's copy.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual Message Carry(const Message& m) = 0;
};

// Hands messages over unchanged.
class DirectTransport final : public Transport {
 public:
  Message Carry(const Message& m) override { return m; }
};

// Encodes every message, pushes it through an InMemoryChannel and decodes it
// on the far side. Keeps a copy of every frame.
class SerializingTransport final : public Transport {
 public:
  Message Carry(const Message& m) override;

  const std::vector<Bytes>& frames() const { return log_; }
  uint64_t bytes_carried() const { return bytes_; }
  void Clear();

 private:
  InMemoryChannel channel_;
  std::vector<Bytes> log_;
  uint64_t bytes_ = 0;
};

}  // namespace pfip::protocol

#endif  // PFIP_PROTOCOL_MESSAGES_H_
