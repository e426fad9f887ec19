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

#ifndef TLXS_EXTENSION_HPP_
#define TLXS_EXTENSION_HPP_

// Extension-layer payload: the lossless-coded planes of the enhancement
// signal, one per component.
//
//   "XSE1" | coder id u8 | depth u8 | per component: length u32 | payload

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tlxs/bitio.hpp"
#include "tlxs/error.hpp"
#include "tlxs/image.hpp"
#include "tlxs/parallel.hpp"
#include "tlxs/predictive.hpp"
#include "tlxs/wavelet_lossless.hpp"

namespace tlxs {

enum class LosslessCoderId : uint8_t {
  kPredictive = 0,
  kWavelet = 1,
};

inline constexpr char kExtensionMagic[5] = "XSE1";

inline std::string_view CoderName(LosslessCoderId id) {
  return id == LosslessCoderId::kPredictive ? "predictive" : "wavelet";
}

inline std::optional<LosslessCoderId> ParseCoderName(std::string_view name) {
  if (name == "predictive") return LosslessCoderId::kPredictive;
  if (name == "wavelet") return LosslessCoderId::kWavelet;
  return std::nullopt;
}

inline bool IsKnownCoder(uint32_t raw) {
  return raw == static_cast<uint32_t>(LosslessCoderId::kPredictive) ||
         raw == static_cast<uint32_t>(LosslessCoderId::kWavelet);
}

inline std::vector<uint8_t> EncodePlaneLossless(const Plane<int32_t>& plane, int depth,
                                                LosslessCoderId coder) {
  return coder == LosslessCoderId::kPredictive ? EncodePredictive(plane, depth)
                                               : EncodeWaveletLossless(plane, depth);
}

inline Plane<int32_t> DecodePlaneLossless(std::span<const uint8_t> bytes, size_t width,
                                          size_t height, int depth, LosslessCoderId coder) {
  return coder == LosslessCoderId::kPredictive
             ? DecodePredictive(bytes, width, height, depth)
             : DecodeWaveletLossless(bytes, width, height, depth);
}

struct ExtensionHeader {
  LosslessCoderId coder = LosslessCoderId::kPredictive;
  int depth = 0;
  std::vector<uint32_t> plane_bytes;
  std::vector<size_t> plane_offsets;
};

inline std::vector<uint8_t> EncodeExtension(const std::vector<Plane<int32_t>>& planes,
                                            int depth, LosslessCoderId coder,
                                            int threads = 1) {
  Check(!planes.empty(), ErrorCode::kInvalidArgument, "no planes");
  std::vector<std::vector<uint8_t>> coded(planes.size());
  ParallelFor(planes.size(), threads,
              [&](size_t c) { coded[c] = EncodePlaneLossless(planes[c], depth, coder); });
  ByteWriter w;
  w.Tag(kExtensionMagic);
  w.U8(static_cast<uint32_t>(coder));
  w.U8(static_cast<uint32_t>(depth));
  for (const auto& c : coded) {
    Check(c.size() <= 0xFFFFFFFFull, ErrorCode::kInvalidArgument, "plane payload too large");
    w.U32(static_cast<uint32_t>(c.size()));
    w.Bytes(c);
  }
  return std::move(w).Take();
}

inline ExtensionHeader ParseExtensionHeader(std::span<const uint8_t> bytes, int components) {
  ByteReader r(bytes);
  Check(r.MatchTag(kExtensionMagic), ErrorCode::kBadMagic, "extension payload magic");
  ExtensionHeader h;
  const uint32_t coder = r.U8();
  Check(IsKnownCoder(coder), ErrorCode::kMalformedHeader,
        "unknown coder id " + std::to_string(coder));
  h.coder = static_cast<LosslessCoderId>(coder);
  h.depth = static_cast<int>(r.U8());
  Check(h.depth >= 1 && h.depth <= kMaxBitDepth + 1, ErrorCode::kMalformedHeader,
        "extension depth out of range");
  for (int c = 0; c < components; ++c) {
    const uint32_t len = r.U32();
    h.plane_offsets.push_back(r.position());
    r.Bytes(len);
    h.plane_bytes.push_back(len);
  }
  Check(r.remaining() == 0, ErrorCode::kLengthMismatch,
        "extension has " + std::to_string(r.remaining()) + " trailing bytes");
  return h;
}

struct DecodedExtension {
  ExtensionHeader header;
  std::vector<Plane<int32_t>> planes;
};

inline DecodedExtension DecodeExtension(std::span<const uint8_t> bytes, size_t width,
                                        size_t height, int components, int threads = 1) {
  DecodedExtension out;
  out.header = ParseExtensionHeader(bytes, components);
  out.planes.resize(components);
  ParallelFor(out.planes.size(), threads, [&](size_t c) {
    out.planes[c] = DecodePlaneLossless(
        bytes.subspan(out.header.plane_offsets[c], out.header.plane_bytes[c]), width,
        height, out.header.depth, out.header.coder);
  });
  return out;
}

}  // namespace tlxs

#endif  // TLXS_EXTENSION_HPP_
