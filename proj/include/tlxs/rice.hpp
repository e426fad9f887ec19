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

#ifndef TLXS_RICE_HPP_
#define TLXS_RICE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tlxs/bitio.hpp"
#include "tlxs/error.hpp"

namespace tlxs {

inline constexpr int kMaxRiceK = 24;

// 0, -1, 1, -2, 2, ... -> 0, 1, 2, 3, 4, ...
inline constexpr uint32_t ZigzagEncode(int32_t v) {
  return (static_cast<uint32_t>(v) << 1) ^ static_cast<uint32_t>(v >> 31);
}

inline constexpr int32_t ZigzagDecode(uint32_t z) {
  return static_cast<int32_t>(z >> 1) ^ -static_cast<int32_t>(z & 1);
}

// Golomb-Rice: (z >> k) ones, a terminating zero, then the low k bits of z.
inline void PutRice(BitWriter& w, uint32_t z, int k) {
  w.PutUnary(z >> k);
  w.PutBits(z, k);
}

inline uint32_t GetRice(BitReader& r, int k) {
  const uint64_t q = r.GetUnary();
  Check(q <= (uint64_t{0xFFFFFFFFu} >> k), ErrorCode::kCorruptPayload,
        "rice quotient overflows");
  return static_cast<uint32_t>((q << k) | r.GetBits(k));
}

inline constexpr uint64_t RiceLength(uint32_t z, int k) {
  return uint64_t{z >> k} + 1 + static_cast<uint64_t>(k);
}

inline uint64_t CodedBandLength(std::span<const int32_t> indices, int k) {
  uint64_t bits = 0;
  for (int32_t v : indices) bits += RiceLength(ZigzagEncode(v), k);
  return bits;
}

inline void EncodeBand(BitWriter& w, std::span<const int32_t> indices, int k) {
  Check(k >= 0 && k <= kMaxRiceK, ErrorCode::kInvalidArgument,
        "rice k out of range: " + std::to_string(k));
  for (int32_t v : indices) PutRice(w, ZigzagEncode(v), k);
}

inline std::vector<uint8_t> EncodeBand(std::span<const int32_t> indices, int k) {
  BitWriter w;
  EncodeBand(w, indices, k);
  return std::move(w).Take();
}

inline std::vector<int32_t> DecodeBand(BitReader& r, size_t count, int k) {
  Check(k >= 0 && k <= kMaxRiceK, ErrorCode::kCorruptPayload,
        "rice k out of range: " + std::to_string(k));
  std::vector<int32_t> out(count);
  for (auto& v : out) v = ZigzagDecode(GetRice(r, k));
  return out;
}

inline std::vector<int32_t> DecodeBand(std::span<const uint8_t> bits, size_t count, int k) {
  BitReader r(bits);
  return DecodeBand(r, count, k);
}

// Exhaustive search; ties resolve to the smallest k.
inline int ChooseRiceK(std::span<const int32_t> indices) {
  int best_k = 0;
  uint64_t best = CodedBandLength(indices, 0);
  for (int k = 1; k <= kMaxRiceK; ++k) {
    const uint64_t len = CodedBandLength(indices, k);
    if (len < best) {
      best = len;
      best_k = k;
    }
  }
  return best_k;
}

}  // namespace tlxs

#endif  // TLXS_RICE_HPP_
