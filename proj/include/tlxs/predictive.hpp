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

#ifndef TLXS_PREDICTIVE_HPP_
#define TLXS_PREDICTIVE_HPP_

// Low-complexity predictive lossless coder in the LOCO-I style: median edge
// detector prediction, zigzag-mapped errors, Golomb-Rice codes with a
// per-plane adaptive parameter. No context modelling and no run mode.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tlxs/bitio.hpp"
#include "tlxs/error.hpp"
#include "tlxs/image.hpp"
#include "tlxs/residual.hpp"
#include "tlxs/rice.hpp"

namespace tlxs {

// a = west, b = north, c = north-west.
inline constexpr int32_t MedPredict(int32_t a, int32_t b, int32_t c) {
  const int32_t mx = std::max(a, b);
  const int32_t mn = std::min(a, b);
  if (c >= mx) return mn;
  if (c <= mn) return mx;
  return a + b - c;
}

namespace predictive_detail {

inline constexpr uint32_t kWindow = 64;

// k = MSB index of the running mean of mapped errors; the accumulator and
// count halve when the count reaches the window size.
class AdaptiveRice {
 public:
  int k() const {
    const uint64_t mean = sum_ / count_;
    if (mean == 0) return 0;
    return std::min(static_cast<int>(std::bit_width(mean)) - 1, kMaxRiceK);
  }

  void Update(uint32_t mapped) {
    sum_ += mapped;
    if (++count_ == kWindow) {
      sum_ >>= 1;
      count_ >>= 1;
    }
  }

 private:
  uint64_t sum_ = 0;
  uint32_t count_ = 1;
};

// Border rule: the first sample is predicted by 2^(depth-1) - 1, the rest of
// the first row by the west neighbour, the first column by the north one.
inline int32_t Predict(const Plane<int32_t>& p, size_t x, size_t y, int32_t first) {
  if (y == 0) return x == 0 ? first : p.at(x - 1, 0);
  if (x == 0) return p.at(0, y - 1);
  return MedPredict(p.at(x - 1, y), p.at(x, y - 1), p.at(x - 1, y - 1));
}

inline void CheckDepth(int depth) {
  Check(depth >= 1 && depth <= kMaxBitDepth + 1, ErrorCode::kInvalidArgument,
        "coder depth " + std::to_string(depth) + " outside 1..17");
}

}  // namespace predictive_detail

// Codes an unsigned plane whose samples fit in `depth` bits. Raster order;
// the payload is the bitstream alone, zero-padded to a byte boundary.
inline std::vector<uint8_t> EncodePredictive(const Plane<int32_t>& plane, int depth) {
  predictive_detail::CheckDepth(depth);
  const int32_t max = static_cast<int32_t>((int64_t{1} << depth) - 1);
  const int32_t first = static_cast<int32_t>((int64_t{1} << (depth - 1)) - 1);
  BitWriter w;
  predictive_detail::AdaptiveRice model;
  for (size_t y = 0; y < plane.height; ++y) {
    for (size_t x = 0; x < plane.width; ++x) {
      const int32_t s = plane.at(x, y);
      Check(s >= 0 && s <= max, ErrorCode::kSampleOutOfRange,
            "sample " + std::to_string(s) + " does not fit in " + std::to_string(depth) +
                " bits");
      const uint32_t z = ZigzagEncode(s - predictive_detail::Predict(plane, x, y, first));
      PutRice(w, z, model.k());
      model.Update(z);
    }
  }
  return std::move(w).Take();
}

inline Plane<int32_t> DecodePredictive(std::span<const uint8_t> bytes, size_t width,
                                       size_t height, int depth) {
  predictive_detail::CheckDepth(depth);
  Check(width > 0 && height > 0, ErrorCode::kInvalidArgument, "zero dimension");
  // At least one bit per sample.
  Check(uint64_t{width} * height <= uint64_t{bytes.size()} * 8, ErrorCode::kTruncated,
        "payload too short for plane");
  const int32_t max = static_cast<int32_t>((int64_t{1} << depth) - 1);
  const int32_t first = static_cast<int32_t>((int64_t{1} << (depth - 1)) - 1);
  Plane<int32_t> plane(width, height);
  BitReader r(bytes);
  predictive_detail::AdaptiveRice model;
  for (size_t y = 0; y < height; ++y) {
    for (size_t x = 0; x < width; ++x) {
      const uint32_t z = GetRice(r, model.k());
      const int64_t s =
          int64_t{predictive_detail::Predict(plane, x, y, first)} + ZigzagDecode(z);
      Check(s >= 0 && s <= max, ErrorCode::kCorruptPayload, "decoded sample out of range");
      plane.at(x, y) = static_cast<int32_t>(s);
      model.Update(z);
    }
  }
  Check(r.remaining() < 8 && r.GetBits(static_cast<int>(r.remaining())) == 0,
        ErrorCode::kCorruptPayload, "trailing data after plane");
  return plane;
}

inline std::vector<uint8_t> EncodePredictive(const ResidualPlane& r) {
  Check(r.shifted, ErrorCode::kInvalidArgument, "coder expects a DC-shifted residual");
  return EncodePredictive(r.samples, r.depth);
}

inline ResidualPlane DecodePredictiveResidual(std::span<const uint8_t> bytes, size_t width,
                                              size_t height, int depth) {
  ResidualPlane r;
  r.depth = depth;
  r.shifted = true;
  r.samples = DecodePredictive(bytes, width, height, depth);
  return r;
}

}  // namespace tlxs

#endif  // TLXS_PREDICTIVE_HPP_
