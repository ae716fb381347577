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

#include "pfip/protocol/messages.h"

#include <string_view>

#include "pfip/common/bytes.h"
#include "pfip/common/error.h"

namespace pfip::protocol {
namespace {

constexpr std::string_view kMagic = "PFIPMSG";

void PutIds(ByteWriter& w, const std::vector<std::string>& ids) {
  w.PutU64(ids.size());
  for (const auto& id : ids) w.PutString(id);
}

std::vector<std::string> GetIds(ByteReader& r) {
  uint64_t n = r.GetU64();
  // Each id costs at least its 4-byte length prefix.
  Check(n <= r.remaining() / 4, ErrorCode::kCorrupt, "id count exceeds payload");
  std::vector<std::string> ids;
  ids.reserve(n);
  for (uint64_t i = 0; i < n; ++i) ids.push_back(r.GetString());
  return ids;
}

void PutOptionalBlob(ByteWriter& w, const std::optional<Bytes>& b) {
  w.PutU8(b.has_value() ? 1 : 0);
  if (b) w.PutBlob(*b);
}

std::optional<Bytes> GetOptionalBlob(ByteReader& r) {
  uint8_t flag = r.GetU8();
  Check(flag <= 1, ErrorCode::kCorrupt, "bad optional flag");
  if (flag == 0) return std::nullopt;
  return r.GetBlob();
}

struct Encoder {
  ByteWriter& w;

  void operator()(const EnrollRequest& m) {
    w.PutString(m.id);
    w.PutU64(m.block);
    w.PutBlob(m.full);
    w.PutBlob(m.packed);
    PutOptionalBlob(w, m.baseline);
    w.PutU64(m.baseline_block);
  }
  void operator()(const EnrollAck& m) {
    w.PutU64(m.new_counter);
    w.PutU64(m.bin_index);
    w.PutU64(m.block_index);
  }
  void operator()(const IdentifyRequest& m) {
    w.PutBlob(m.packed);
    w.PutBlob(m.full);
    PutOptionalBlob(w, m.baseline);
  }
  void operator()(const PreselectResult& m) {
    w.PutU64(m.width);
    w.PutU64(m.bins.size());
    for (const auto& b : m.bins) {
      w.PutBlob(b.ct);
      w.PutU64(b.occupancy);
      PutIds(w, b.slot_map);
    }
  }
  void operator()(const CandidateSet& m) { PutIds(w, m.ids); }
  void operator()(const FineResult& m) {
    w.PutU64(m.entries.size());
    for (const auto& e : m.entries) {
      w.PutString(e.id);
      w.PutBlob(e.ct);
    }
  }
  void operator()(const Decision& m) {
    w.PutU8(m.id.has_value() ? 1 : 0);
    if (m.id) w.PutString(*m.id);
    w.PutF64(m.score);
    w.PutString(m.reason);
  }
};

Message DecodePayload(uint8_t tag, ByteReader& r) {
  switch (tag) {
    case 0: {
      EnrollRequest m;
      m.id = r.GetString();
      m.block = r.GetU64();
      m.full = r.GetBlob();
      m.packed = r.GetBlob();
      m.baseline = GetOptionalBlob(r);
      m.baseline_block = r.GetU64();
      return m;
    }
    case 1: {
      EnrollAck m;
      m.new_counter = r.GetU64();
      m.bin_index = r.GetU64();
      m.block_index = r.GetU64();
      return m;
    }
    case 2: {
      IdentifyRequest m;
      m.packed = r.GetBlob();
      m.full = r.GetBlob();
      m.baseline = GetOptionalBlob(r);
      return m;
    }
    case 3: {
      PreselectResult m;
      m.width = r.GetU64();
      uint64_t n = r.GetU64();
      Check(n <= r.remaining() / 24, ErrorCode::kCorrupt, "bin count exceeds payload");
      for (uint64_t i = 0; i < n; ++i) {
        BinScores b;
        b.ct = r.GetBlob();
        b.occupancy = r.GetU64();
        b.slot_map = GetIds(r);
        m.bins.push_back(std::move(b));
      }
      return m;
    }
    case 4:
      return CandidateSet{GetIds(r)};
    case 5: {
      FineResult m;
      uint64_t n = r.GetU64();
      Check(n <= r.remaining() / 12, ErrorCode::kCorrupt, "entry count exceeds payload");
      for (uint64_t i = 0; i < n; ++i) {
        FineEntry e;
        e.id = r.GetString();
        e.ct = r.GetBlob();
        m.entries.push_back(std::move(e));
      }
      return m;
    }
    case 6: {
      Decision m;
      uint8_t has = r.GetU8();
      Check(has <= 1, ErrorCode::kCorrupt, "bad optional flag");
      if (has) m.id = r.GetString();
      m.score = r.GetF64();
      m.reason = r.GetString();
      return m;
    }
    default:
      Fail(ErrorCode::kCorrupt, "unknown message tag " + std::to_string(tag));
  }
}

}  // namespace

std::string_view MessageName(const Message& m) {
  static constexpr std::string_view kNames[] = {"EnrollRequest",   "EnrollAck",    "IdentifyRequest",
                                                "PreselectResult", "CandidateSet", "FineResult",
                                                "Decision"};
  return kNames[m.index()];
}

Bytes EncodeFrame(const Message& m) {
  ByteWriter body;
  body.PutRaw(kMagic);
  body.PutU16(kMessageVersion);
  body.PutU8(static_cast<uint8_t>(m.index()));
  std::visit(Encoder{body}, m);
  ByteWriter frame;
  frame.PutU64(body.bytes().size());
  frame.PutRaw(body.bytes());
  return std::move(frame).Take();
}

Message DecodeFrame(std::span<const uint8_t> frame) {
  ByteReader outer(frame);
  uint64_t len = outer.GetU64();
  Check(len == outer.remaining(), len > outer.remaining() ? ErrorCode::kTruncated : ErrorCode::kCorrupt,
        "frame length does not match");
  ByteReader r(outer.GetRaw(len));
  auto magic = r.GetRaw(kMagic.size());
  Check(std::string_view(reinterpret_cast<const char*>(magic.data()), magic.size()) == kMagic,
        ErrorCode::kBadMagic, "not a message frame");
  Check(r.GetU16() == kMessageVersion, ErrorCode::kBadVersion, "unsupported message version");
  uint8_t tag = r.GetU8();
  Message m = DecodePayload(tag, r);
  Check(r.done(), ErrorCode::kCorrupt, "trailing bytes in message");
  return m;
}

void InMemoryChannel::Send(Bytes frame) {
  std::lock_guard lock(mu_);
  frames_.push_back(std::move(frame));
}

Bytes InMemoryChannel::Receive() {
  std::lock_guard lock(mu_);
  Check(!frames_.empty(), ErrorCode::kEmpty, "channel is empty");
  Bytes f = std::move(frames_.front());
  frames_.pop_front();
  return f;
}

size_t InMemoryChannel::pending() const {
  std::lock_guard lock(mu_);
  return frames_.size();
}

Message SerializingTransport::Carry(const Message& m) {
  Bytes frame = EncodeFrame(m);
  bytes_ += frame.size();
  log_.push_back(frame);
  channel_.Send(std::move(frame));
  return DecodeFrame(channel_.Receive());
}

void SerializingTransport::Clear() {
  log_.clear();
  bytes_ = 0;
}

}  // namespace pfip::protocol
