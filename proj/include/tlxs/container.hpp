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

#ifndef TLXS_CONTAINER_HPP_
#define TLXS_CONTAINER_HPP_

// Two-layer container. Fixed 32-byte big-endian header followed by the base
// payload and the extension payload, with no padding in between:
//
//   off  size
//     0     4  "TLXS"
//     4     1  version (1)
//     5     1  components
//     6     1  bit depth N
//     7     1  extension coder id (0xFF when there is no extension)
//     8     4  width
//    12     4  height
//    16     4  base payload length
//    20     4  extension payload length
//    24     4  CRC-32 of the header with this field zeroed
//    28     4  reserved, zero
//
// Either payload may be empty, not both. Payloads carry no checksum.

#include <zlib.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tlxs/base_codec.hpp"
#include "tlxs/bitio.hpp"
#include "tlxs/error.hpp"
#include "tlxs/extension.hpp"
#include "tlxs/image.hpp"

namespace tlxs {

inline constexpr char kContainerMagic[5] = "TLXS";
inline constexpr uint32_t kContainerVersion = 1;
inline constexpr size_t kContainerHeaderSize = 32;
inline constexpr size_t kCrcOffset = 24;
inline constexpr uint32_t kNoCoder = 0xFF;

struct ContainerMeta {
  uint32_t width = 0;
  uint32_t height = 0;
  int components = 0;
  int bit_depth = 0;
  std::optional<LosslessCoderId> coder;  // absent iff there is no extension

  bool operator==(const ContainerMeta&) const = default;
};

struct LayeredFile {
  ContainerMeta meta;
  std::vector<uint8_t> base;
  std::vector<uint8_t> extension;

  bool has_base() const { return !base.empty(); }
  bool has_extension() const { return !extension.empty(); }
  bool operator==(const LayeredFile&) const = default;
};

inline uint32_t Crc32(std::span<const uint8_t> bytes) {
  return static_cast<uint32_t>(
      crc32(crc32(0L, Z_NULL, 0), bytes.data(), static_cast<uInt>(bytes.size())));
}

namespace container_detail {

inline void ValidateMeta(const ContainerMeta& m) {
  Check(m.width > 0 && m.height > 0, ErrorCode::kMalformedHeader, "zero dimension");
  Check(m.components == 1 || m.components == 3, ErrorCode::kMalformedHeader,
        "components must be 1 or 3");
  Check(m.bit_depth >= kMinBitDepth && m.bit_depth <= kMaxBitDepth,
        ErrorCode::kMalformedHeader, "bit depth outside 8..16");
}

inline uint32_t HeaderCrc(std::span<const uint8_t> header) {
  uint8_t copy[kContainerHeaderSize];
  std::copy(header.begin(), header.begin() + kContainerHeaderSize, copy);
  for (size_t i = 0; i < 4; ++i) copy[kCrcOffset + i] = 0;
  return Crc32(copy);
}

}  // namespace container_detail

// Checks that the metadata agrees with what the payload headers declare.
inline void CheckMetaAgainstPayloads(const ContainerMeta& meta, std::span<const uint8_t> base,
                                     std::span<const uint8_t> ext) {
  container_detail::ValidateMeta(meta);
  Check(!base.empty() || !ext.empty(), ErrorCode::kInvalidArgument,
        "container needs at least one layer");
  Check(ext.empty() != meta.coder.has_value(), ErrorCode::kInvalidArgument,
        "coder id must be present exactly when an extension is");
  if (!base.empty()) {
    const BaseHeader h = ParseBaseHeader(base);
    Check(h.width == meta.width && h.height == meta.height &&
              h.components == meta.components && h.bit_depth == meta.bit_depth,
          ErrorCode::kInvalidArgument, "base payload disagrees with container metadata");
  }
  if (!ext.empty()) {
    const ExtensionHeader h = ParseExtensionHeader(ext, meta.components);
    const int want_depth = base.empty() ? meta.bit_depth : meta.bit_depth + 1;
    Check(h.coder == *meta.coder && h.depth == want_depth, ErrorCode::kInvalidArgument,
          "extension payload disagrees with container metadata");
  }
}

inline std::vector<uint8_t> Mux(std::span<const uint8_t> base, std::span<const uint8_t> ext,
                                const ContainerMeta& meta) {
  CheckMetaAgainstPayloads(meta, base, ext);
  Check(base.size() <= 0xFFFFFFFFull && ext.size() <= 0xFFFFFFFFull,
        ErrorCode::kInvalidArgument, "payload exceeds 4 GiB");
  ByteWriter w;
  w.Tag(kContainerMagic);
  w.U8(kContainerVersion);
  w.U8(static_cast<uint32_t>(meta.components));
  w.U8(static_cast<uint32_t>(meta.bit_depth));
  w.U8(meta.coder ? static_cast<uint32_t>(*meta.coder) : kNoCoder);
  w.U32(meta.width);
  w.U32(meta.height);
  w.U32(static_cast<uint32_t>(base.size()));
  w.U32(static_cast<uint32_t>(ext.size()));
  w.U32(0);  // crc placeholder
  w.U32(0);  // reserved
  auto& bytes = w.bytes();
  const uint32_t crc = container_detail::HeaderCrc(bytes);
  for (int i = 0; i < 4; ++i) bytes[kCrcOffset + i] = static_cast<uint8_t>(crc >> (24 - 8 * i));
  w.Bytes(base);
  w.Bytes(ext);
  return std::move(w).Take();
}

struct ContainerHeader {
  ContainerMeta meta;
  uint32_t version = 0;
  uint32_t base_length = 0;
  uint32_t extension_length = 0;
  uint32_t crc = 0;
};

// Validates the fixed header and the declared lengths; payloads untouched.
inline ContainerHeader ParseContainerHeader(std::span<const uint8_t> file) {
  Check(file.size() >= 4, ErrorCode::kLengthMismatch, "file shorter than magic");
  ByteReader r(file);
  Check(r.MatchTag(kContainerMagic), ErrorCode::kBadMagic, "not a TLXS file");
  Check(file.size() >= kContainerHeaderSize, ErrorCode::kLengthMismatch,
        "file shorter than header");
  ContainerHeader h;
  h.version = r.U8();
  h.meta.components = static_cast<int>(r.U8());
  h.meta.bit_depth = static_cast<int>(r.U8());
  const uint32_t coder = r.U8();
  h.meta.width = r.U32();
  h.meta.height = r.U32();
  h.base_length = r.U32();
  h.extension_length = r.U32();
  h.crc = r.U32();
  const uint32_t reserved = r.U32();
  Check(h.crc == container_detail::HeaderCrc(file), ErrorCode::kChecksumMismatch,
        "header CRC-32 does not match");
  Check(h.version == kContainerVersion, ErrorCode::kUnsupportedVersion,
        "version " + std::to_string(h.version));
  Check(reserved == 0, ErrorCode::kMalformedHeader, "reserved bytes set");
  container_detail::ValidateMeta(h.meta);
  if (coder != kNoCoder) {
    Check(IsKnownCoder(coder), ErrorCode::kMalformedHeader, "unknown coder id");
    h.meta.coder = static_cast<LosslessCoderId>(coder);
  }
  Check((h.extension_length == 0) != h.meta.coder.has_value(), ErrorCode::kMalformedHeader,
        "coder id inconsistent with extension length");
  Check(h.base_length > 0 || h.extension_length > 0, ErrorCode::kMalformedHeader,
        "container has no layers");
  const uint64_t expected =
      kContainerHeaderSize + uint64_t{h.base_length} + h.extension_length;
  Check(file.size() == expected, ErrorCode::kLengthMismatch,
        "file is " + std::to_string(file.size()) + " bytes, header declares " +
            std::to_string(expected));
  return h;
}

inline LayeredFile Demux(std::span<const uint8_t> file) {
  const ContainerHeader h = ParseContainerHeader(file);
  LayeredFile out;
  out.meta = h.meta;
  const auto base = file.subspan(kContainerHeaderSize, h.base_length);
  const auto ext = file.subspan(kContainerHeaderSize + h.base_length, h.extension_length);
  out.base.assign(base.begin(), base.end());
  out.extension.assign(ext.begin(), ext.end());
  return out;
}

// Legacy path: decodes the base layer and ignores the extension entirely.
inline PlanarImage DecodeBaseOnly(std::span<const uint8_t> file, int threads = 1) {
  const ContainerHeader h = ParseContainerHeader(file);
  Check(h.base_length > 0, ErrorCode::kMissingBaseLayer, "file carries no base layer");
  PlanarImage img = DecodeBase(file.subspan(kContainerHeaderSize, h.base_length), threads);
  Check(img.width() == h.meta.width && img.height() == h.meta.height &&
            img.components() == h.meta.components && img.bit_depth() == h.meta.bit_depth,
        ErrorCode::kShapeMismatch, "base layer disagrees with container header");
  return img;
}

}  // namespace tlxs

#endif  // TLXS_CONTAINER_HPP_
