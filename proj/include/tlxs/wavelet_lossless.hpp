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

#ifndef TLXS_WAVELET_LOSSLESS_HPP_
#define TLXS_WAVELET_LOSSLESS_HPP_

// Transform-based lossless coder: three two-way 5/3 stages, every band coded
// at step 1. Bands are split into 16x16 code-blocks; each block carries its
// own exhaustively chosen Rice parameter.
//
// Payload: per band in canonical order, coded bits u32 | bits zero-padded to
// a byte boundary. Within a band, blocks follow in raster order, each as
// rice k (5 bits) followed by the Rice codes of its samples in raster order.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tlxs/bitio.hpp"
#include "tlxs/error.hpp"
#include "tlxs/image.hpp"
#include "tlxs/residual.hpp"
#include "tlxs/rice.hpp"
#include "tlxs/wavelet.hpp"

namespace tlxs {

inline constexpr int kLosslessWaveletLevels = 3;
inline constexpr size_t kCodeBlockSize = 16;
inline constexpr int kBlockKBits = 5;

namespace wavelet_lossless_detail {

inline size_t BlockCount(const BandInfo& b) {
  const auto n = [](size_t v) { return (v + kCodeBlockSize - 1) / kCodeBlockSize; };
  return n(b.width) * n(b.height);
}

template <typename Fn>
void ForEachBlock(size_t width, size_t height, Fn&& fn) {
  for (size_t by = 0; by < height; by += kCodeBlockSize) {
    for (size_t bx = 0; bx < width; bx += kCodeBlockSize) {
      fn(bx, by, std::min(kCodeBlockSize, width - bx), std::min(kCodeBlockSize, height - by));
    }
  }
}

inline void EncodeBlocks(BitWriter& w, const Plane<int32_t>& band) {
  std::vector<int32_t> block;
  ForEachBlock(band.width, band.height, [&](size_t bx, size_t by, size_t bw, size_t bh) {
    block.clear();
    for (size_t y = by; y < by + bh; ++y) {
      for (size_t x = bx; x < bx + bw; ++x) block.push_back(band.at(x, y));
    }
    const int k = ChooseRiceK(block);
    w.PutBits(static_cast<uint32_t>(k), kBlockKBits);
    EncodeBand(w, block, k);
  });
}

inline void DecodeBlocks(BitReader& r, Plane<int32_t>& band) {
  ForEachBlock(band.width, band.height, [&](size_t bx, size_t by, size_t bw, size_t bh) {
    const int k = static_cast<int>(r.GetBits(kBlockKBits));
    Check(k <= kMaxRiceK, ErrorCode::kCorruptPayload, "rice k out of range");
    for (size_t y = by; y < by + bh; ++y) {
      for (size_t x = bx; x < bx + bw; ++x) {
        const int32_t v = ZigzagDecode(GetRice(r, k));
        Check(v > -(1 << 24) && v < (1 << 24), ErrorCode::kCorruptPayload,
              "coefficient out of range");
        band.at(x, y) = v;
      }
    }
  });
}

}  // namespace wavelet_lossless_detail

inline std::vector<uint8_t> EncodeWaveletLossless(const Plane<int32_t>& plane, int depth) {
  Check(depth >= 1 && depth <= kMaxBitDepth + 1, ErrorCode::kInvalidArgument,
        "coder depth outside 1..17");
  const int32_t max = static_cast<int32_t>((int64_t{1} << depth) - 1);
  const int32_t offset = int32_t{1} << (depth - 1);
  Plane<int32_t> centered(plane.width, plane.height);
  for (size_t i = 0; i < plane.data.size(); ++i) {
    const int32_t s = plane.data[i];
    Check(s >= 0 && s <= max, ErrorCode::kSampleOutOfRange,
          "sample does not fit in " + std::to_string(depth) + " bits");
    centered.data[i] = s - offset;
  }
  const Subbands sb = Decompose(centered, kLosslessWaveletLevels, kLosslessWaveletLevels);
  ByteWriter out;
  for (const auto& band : sb.bands) {
    BitWriter bw;
    wavelet_lossless_detail::EncodeBlocks(bw, band);
    Check(bw.bit_count() <= 0xFFFFFFFFull, ErrorCode::kInvalidArgument, "band too large");
    out.U32(static_cast<uint32_t>(bw.bit_count()));
    out.Bytes(bw.bytes());
  }
  return std::move(out).Take();
}

inline Plane<int32_t> DecodeWaveletLossless(std::span<const uint8_t> bytes, size_t width,
                                            size_t height, int depth) {
  Check(depth >= 1 && depth <= kMaxBitDepth + 1, ErrorCode::kInvalidArgument,
        "coder depth outside 1..17");
  Check(width > 0 && height > 0, ErrorCode::kInvalidArgument, "zero dimension");
  Check(uint64_t{width} * height <= uint64_t{bytes.size()} * 8, ErrorCode::kTruncated,
        "payload too short for plane");
  Subbands sb;
  sb.layout = ComputeLayout(width, height, kLosslessWaveletLevels, kLosslessWaveletLevels);
  ByteReader r(bytes);
  for (const BandInfo& info : sb.layout) {
    const uint32_t bits = r.U32();
    // Each block costs its k field, each sample at least one bit.
    Check(uint64_t{bits} >= wavelet_lossless_detail::BlockCount(info) * kBlockKBits +
                               uint64_t{info.size()},
          ErrorCode::kCorruptPayload, "band length inconsistent with band size");
    const auto data = r.Bytes((size_t{bits} + 7) / 8);
    BitReader br(data, bits);
    Plane<int32_t> band(info.width, info.height);
    wavelet_lossless_detail::DecodeBlocks(br, band);
    Check(br.remaining() == 0, ErrorCode::kCorruptPayload, "band has trailing bits");
    sb.bands.push_back(std::move(band));
  }
  Check(r.remaining() == 0, ErrorCode::kLengthMismatch, "trailing bytes after last band");
  Plane<int32_t> plane = Recompose(sb);
  const int32_t max = static_cast<int32_t>((int64_t{1} << depth) - 1);
  const int32_t offset = int32_t{1} << (depth - 1);
  for (auto& v : plane.data) {
    v += offset;
    Check(v >= 0 && v <= max, ErrorCode::kCorruptPayload, "decoded sample out of range");
  }
  return plane;
}

inline std::vector<uint8_t> EncodeWaveletLossless(const ResidualPlane& r) {
  Check(r.shifted, ErrorCode::kInvalidArgument, "coder expects a DC-shifted residual");
  return EncodeWaveletLossless(r.samples, r.depth);
}

inline ResidualPlane DecodeWaveletLosslessResidual(std::span<const uint8_t> bytes,
                                                   size_t width, size_t height, int depth) {
  ResidualPlane r;
  r.depth = depth;
  r.shifted = true;
  r.samples = DecodeWaveletLossless(bytes, width, height, depth);
  return r;
}

}  // namespace tlxs

#endif  // TLXS_WAVELET_LOSSLESS_HPP_
