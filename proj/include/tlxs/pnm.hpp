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

#ifndef TLXS_PNM_HPP_
#define TLXS_PNM_HPP_

#include <bit>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "tlxs/error.hpp"
#include "tlxs/image.hpp"

namespace tlxs {

namespace pnm_detail {

class HeaderScanner {
 public:
  explicit HeaderScanner(std::span<const uint8_t> b) : b_(b) {}

  void SkipSpaceAndComments() {
    while (pos_ < b_.size()) {
      if (b_[pos_] == '#') {
        while (pos_ < b_.size() && b_[pos_] != '\n' && b_[pos_] != '\r') ++pos_;
      } else if (std::isspace(b_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  uint32_t ReadUnsigned(const char* what) {
    SkipSpaceAndComments();
    Check(pos_ < b_.size() && std::isdigit(b_[pos_]), ErrorCode::kMalformedHeader,
          std::string("expected ") + what);
    uint64_t v = 0;
    while (pos_ < b_.size() && std::isdigit(b_[pos_])) {
      v = v * 10 + (b_[pos_++] - '0');
      Check(v <= 0xFFFFFFFFull, ErrorCode::kMalformedHeader,
            std::string(what) + " too large");
    }
    return static_cast<uint32_t>(v);
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void ConsumeSingleSpace() {
    Check(pos_ < b_.size() && std::isspace(b_[pos_]), ErrorCode::kMalformedHeader,
          "missing whitespace after maxval");
    ++pos_;
  }

  size_t pos_ = 0;

 private:
  std::span<const uint8_t> b_;
};

}  // namespace pnm_detail

// Decodes binary PGM (P5) or PPM (P6). maxval must be 2^N - 1 with N in
// 8..16; the unused high bits of every sample must be zero.
inline PlanarImage ParsePnm(std::span<const uint8_t> bytes) {
  Check(bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6'),
        ErrorCode::kMalformedHeader, "not a binary PGM/PPM file");
  const int components = bytes[1] == '5' ? 1 : 3;
  pnm_detail::HeaderScanner scan(bytes);
  scan.pos_ = 2;
  Check(scan.pos_ < bytes.size() && (std::isspace(bytes[2]) || bytes[2] == '#'),
        ErrorCode::kMalformedHeader, "bad magic");
  const uint32_t width = scan.ReadUnsigned("width");
  const uint32_t height = scan.ReadUnsigned("height");
  const uint32_t maxval = scan.ReadUnsigned("maxval");
  scan.ConsumeSingleSpace();
  Check(width > 0 && height > 0, ErrorCode::kMalformedHeader, "zero dimension");
  Check(maxval > 0 && maxval <= 0xFFFF && std::has_single_bit(maxval + 1),
        ErrorCode::kMalformedHeader,
        "maxval " + std::to_string(maxval) + " is not of the form 2^N-1");
  const int depth = std::countr_zero(maxval + 1);
  Check(depth >= kMinBitDepth && depth <= kMaxBitDepth, ErrorCode::kMalformedHeader,
        "bit depth " + std::to_string(depth) + " outside 8..16");

  const size_t bytes_per_sample = maxval > 255 ? 2 : 1;
  const uint64_t count = uint64_t{width} * height * components;
  const uint64_t need = count * bytes_per_sample;
  Check(bytes.size() - scan.pos_ >= need, ErrorCode::kTruncated,
        "raster needs " + std::to_string(need) + " bytes, have " +
            std::to_string(bytes.size() - scan.pos_));

  std::vector<Plane<uint16_t>> planes(components, Plane<uint16_t>(width, height));
  const uint8_t* p = bytes.data() + scan.pos_;
  for (size_t i = 0; i < size_t{width} * height; ++i) {
    for (int c = 0; c < components; ++c) {
      uint32_t s = *p++;
      if (bytes_per_sample == 2) s = (s << 8) | *p++;
      Check(s <= maxval, ErrorCode::kSampleOutOfRange,
            "sample exceeds maxval (" + std::to_string(s) + " > " +
                std::to_string(maxval) + ")");
      planes[c].data[i] = static_cast<uint16_t>(s);
    }
  }
  return PlanarImage::Create(depth, std::move(planes));
}

inline std::vector<uint8_t> SerializePnm(const PlanarImage& image) {
  const int components = image.components();
  const uint32_t maxval = image.max_sample();
  const std::string header = std::string(components == 1 ? "P5" : "P6") + "\n" +
                             std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n" +
                             std::to_string(maxval) + "\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  const bool wide = maxval > 255;
  out.reserve(out.size() + image.pixels() * components * (wide ? 2 : 1));
  for (size_t i = 0; i < image.pixels(); ++i) {
    for (int c = 0; c < components; ++c) {
      const uint16_t s = image.plane(c).data[i];
      if (wide) out.push_back(static_cast<uint8_t>(s >> 8));
      out.push_back(static_cast<uint8_t>(s & 0xFF));
    }
  }
  return out;
}

inline std::vector<uint8_t> ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  Check(in.good(), ErrorCode::kIo, "cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  Check(!in.bad(), ErrorCode::kIo, "read failed: " + path);
  return bytes;
}

inline void WriteFileBytes(const std::string& path, std::span<const uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  Check(out.good(), ErrorCode::kIo, "cannot create " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  Check(out.good(), ErrorCode::kIo, "write failed: " + path);
}

inline PlanarImage LoadPnm(const std::string& path) {
  return ParsePnm(ReadFileBytes(path));
}

inline void StorePnm(const PlanarImage& image, const std::string& path) {
  WriteFileBytes(path, SerializePnm(image));
}

}  // namespace tlxs

#endif  // TLXS_PNM_HPP_
