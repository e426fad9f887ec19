// Copyright 2026 The TLXS Authors
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

#ifndef TLXS_BITIO_HPP_
#define TLXS_BITIO_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tlxs/error.hpp"

namespace tlxs {

// MSB-first bit writer. Partial trailing bytes are zero-padded.
class BitWriter {
 public:
  void PutBit(uint32_t bit) {
    if (used_ == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<uint8_t>(0x80u >> used_);
    used_ = (used_ + 1) & 7;
    ++bit_count_;
  }

  // Writes the low `count` bits of `value`, most significant first.
  void PutBits(uint64_t value, int count) {
    for (int i = count - 1; i >= 0; --i) PutBit((value >> i) & 1u);
  }

  void PutUnary(uint64_t ones) {
    for (uint64_t i = 0; i < ones; ++i) PutBit(1);
    PutBit(0);
  }

  void AlignToByte() {
    bit_count_ += (8 - used_) & 7;
    used_ = 0;
  }

  uint64_t bit_count() const { return bit_count_; }
  const std::vector<uint8_t>& bytes() const { return bytes_; }
  std::vector<uint8_t> Take() && { return std::move(bytes_); }

 private:
  std::vector<uint8_t> bytes_;
  int used_ = 0;
  uint64_t bit_count_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const uint8_t> data)
      : data_(data), limit_(static_cast<uint64_t>(data.size()) * 8) {}
  BitReader(std::span<const uint8_t> data, uint64_t bit_limit)
      : data_(data), limit_(bit_limit) {
    Check(bit_limit <= static_cast<uint64_t>(data.size()) * 8,
          ErrorCode::kTruncated, "bit limit beyond buffer");
  }

  uint32_t GetBit() {
    Check(pos_ < limit_, ErrorCode::kTruncated, "bitstream exhausted");
    const uint32_t bit = (data_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
    ++pos_;
    return bit;
  }

  uint64_t GetBits(int count) {
    uint64_t v = 0;
    for (int i = 0; i < count; ++i) v = (v << 1) | GetBit();
    return v;
  }

  // Counts ones up to the terminating zero. Bounded by the remaining bits.
  uint64_t GetUnary() {
    uint64_t n = 0;
    while (GetBit()) ++n;
    return n;
  }

  uint64_t position() const { return pos_; }
  uint64_t remaining() const { return limit_ - pos_; }

 private:
  std::span<const uint8_t> data_;
  uint64_t limit_;
  uint64_t pos_ = 0;
};

// Big-endian byte serialization for fixed-layout headers.
class ByteWriter {
 public:
  void U8(uint32_t v) { out_.push_back(static_cast<uint8_t>(v)); }
  void U16(uint32_t v) {
    U8(v >> 8);
    U8(v);
  }
  void U32(uint32_t v) {
    U16(v >> 16);
    U16(v & 0xFFFFu);
  }
  void Bytes(std::span<const uint8_t> b) {
    out_.insert(out_.end(), b.begin(), b.end());
  }
  void Tag(const char (&tag)[5]) {
    for (int i = 0; i < 4; ++i) U8(static_cast<uint8_t>(tag[i]));
  }

  std::vector<uint8_t>& bytes() { return out_; }
  std::vector<uint8_t> Take() && { return std::move(out_); }

 private:
  std::vector<uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

  uint32_t U8() {
    Need(1);
    return data_[pos_++];
  }
  uint32_t U16() {
    const uint32_t hi = U8();
    return (hi << 8) | U8();
  }
  uint32_t U32() {
    const uint32_t hi = U16();
    return (hi << 16) | U16();
  }
  std::span<const uint8_t> Bytes(size_t n) {
    Need(n);
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  bool MatchTag(const char (&tag)[5]) {
    if (data_.size() - pos_ < 4) return false;
    for (int i = 0; i < 4; ++i) {
      if (data_[pos_ + i] != static_cast<uint8_t>(tag[i])) return false;
    }
    pos_ += 4;
    return true;
  }

  size_t position() const { return pos_; }
  size_t remaining() const { return data_.size() - pos_; }

 private:
  void Need(size_t n) const {
    Check(data_.size() - pos_ >= n, ErrorCode::kTruncated,
          "need " + std::to_string(n) + " more bytes");
  }

  std::span<const uint8_t> data_;
  size_t pos_ = 0;
};

}  // namespace tlxs

#endif  // TLXS_BITIO_HPP_
