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

#ifndef TLXS_PIPELINE_HPP_
#define TLXS_PIPELINE_HPP_

// Two-layer lossless coding. The encoder codes a lossy base layer, decodes
// it again to obtain the reconstruction P', forms the residual R = P - P',
// DC-shifts it into N+1 unsigned bits and hands it to a lossless coder.
// Without a base layer the image itself goes to the lossless coder at N bits.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "tlxs/base_codec.hpp"
#include "tlxs/container.hpp"
#include "tlxs/error.hpp"
#include "tlxs/extension.hpp"
#include "tlxs/image.hpp"
#include "tlxs/metrics.hpp"
#include "tlxs/parallel.hpp"
#include "tlxs/residual.hpp"

namespace tlxs {

struct TwoLayerEncoding {
  std::vector<uint8_t> file;
  size_t base_bytes = 0;
  size_t extension_bytes = 0;
  PlanarImage base_reconstruction;  // P'; all zero without a base layer
  int32_t base_scale = 0;
  bool rate_overshoot = false;
};

struct TwoLayerDecoding {
  PlanarImage image;
  ContainerMeta meta;
  bool lossless = false;  // false when only the base layer was present
};

inline PlanarImage ZeroImage(size_t width, size_t height, int components, int bit_depth) {
  std::vector<Plane<uint16_t>> planes(components, Plane<uint16_t>(width, height, 0));
  return PlanarImage::Create(bit_depth, std::move(planes));
}

inline std::vector<Plane<int32_t>> ToSignedPlanes(const PlanarImage& image) {
  std::vector<Plane<int32_t>> out;
  for (const auto& p : image.planes()) {
    Plane<int32_t> q(p.width, p.height);
    std::copy(p.data.begin(), p.data.end(), q.data.begin());
    out.push_back(std::move(q));
  }
  return out;
}

inline TwoLayerEncoding EncodeTwoLayerDetailed(const PlanarImage& image,
                                               const std::optional<BaseConfig>& base_config,
                                               LosslessCoderId coder, int threads = 1) {
  Check(image.components() > 0, ErrorCode::kInvalidArgument, "empty image");
  ContainerMeta meta{static_cast<uint32_t>(image.width()),
                     static_cast<uint32_t>(image.height()), image.components(),
                     image.bit_depth(), coder};
  TwoLayerEncoding out;
  std::vector<uint8_t> base_bytes;
  std::vector<uint8_t> ext_bytes;
  if (!base_config) {
    out.base_reconstruction =
        ZeroImage(image.width(), image.height(), image.components(), image.bit_depth());
    ext_bytes = EncodeExtension(ToSignedPlanes(image), image.bit_depth(), coder, threads);
  } else {
    BaseBitstream base = EncodeBase(image, *base_config, threads);
    out.base_scale = base.scale;
    out.rate_overshoot = base.rate_overshoot;
    // The encoder decodes its own stream so both sides see the same P'.
    out.base_reconstruction = DecodeBase(base.bytes, threads);
    std::vector<Plane<int32_t>> shifted;
    for (const auto& r : ComputeResidual(image, out.base_reconstruction)) {
      shifted.push_back(DcShift(r, image.bit_depth()).samples);
    }
    ext_bytes = EncodeExtension(shifted, image.bit_depth() + 1, coder, threads);
    base_bytes = std::move(base.bytes);
  }
  out.base_bytes = base_bytes.size();
  out.extension_bytes = ext_bytes.size();
  out.file = Mux(base_bytes, ext_bytes, meta);
  return out;
}

inline std::vector<uint8_t> EncodeTwoLayer(const PlanarImage& image,
                                           const std::optional<BaseConfig>& base_config,
                                           LosslessCoderId coder, int threads = 1) {
  return EncodeTwoLayerDetailed(image, base_config, coder, threads).file;
}

// Base-only files decode to P' with lossless == false.
inline TwoLayerDecoding DecodeTwoLayer(std::span<const uint8_t> file, int threads = 1) {
  const ContainerHeader h = ParseContainerHeader(file);
  const auto base = file.subspan(kContainerHeaderSize, h.base_length);
  const auto ext = file.subspan(kContainerHeaderSize + h.base_length, h.extension_length);
  const ContainerMeta& m = h.meta;

  TwoLayerDecoding out;
  out.meta = m;
  std::optional<PlanarImage> base_image;
  if (!base.empty()) {
    base_image = DecodeBase(base, threads);
    Check(base_image->width() == m.width && base_image->height() == m.height &&
              base_image->components() == m.components &&
              base_image->bit_depth() == m.bit_depth,
          ErrorCode::kShapeMismatch, "base layer disagrees with container header");
  }
  if (ext.empty()) {
    out.image = std::move(*base_image);
    return out;
  }

  DecodedExtension dec = DecodeExtension(ext, m.width, m.height, m.components, threads);
  Check(dec.header.coder == *m.coder, ErrorCode::kCorruptPayload,
        "extension coder disagrees with container header");
  if (!base_image) {
    Check(dec.header.depth == m.bit_depth, ErrorCode::kCorruptPayload,
          "extension depth must equal N without a base layer");
    std::vector<Plane<uint16_t>> planes;
    for (const auto& p : dec.planes) {
      Plane<uint16_t> q(p.width, p.height);
      for (size_t i = 0; i < p.data.size(); ++i) q.data[i] = static_cast<uint16_t>(p.data[i]);
      planes.push_back(std::move(q));
    }
    out.image = PlanarImage::Create(m.bit_depth, std::move(planes));
  } else {
    Check(dec.header.depth == m.bit_depth + 1, ErrorCode::kCorruptPayload,
          "extension depth must equal N+1 with a base layer");
    std::vector<ResidualPlane> residual;
    for (auto& p : dec.planes) {
      ResidualPlane shifted{dec.header.depth, true, std::move(p)};
      residual.push_back(DcUnshift(shifted, m.bit_depth));
    }
    out.image = AddResidual(*base_image, residual);
  }
  out.lossless = true;
  return out;
}

// One sweep cell. Byte counts are exact; the bpp columns derive from them.
struct BenchRow {
  LosslessCoderId coder = LosslessCoderId::kPredictive;
  double target_bpp = 0.0;  // 0 = no base layer
  size_t base_bytes = 0;
  size_t extension_bytes = 0;
  size_t overhead_bytes = 0;
  size_t total_bytes = 0;
  double base_bpp = 0.0;
  double base_psnr = 0.0;  // of P'; the all-zero image without a base
  double ext_bpp = 0.0;
  double overhead_bpp = 0.0;
  double total_bpp = 0.0;
  bool lossless = false;
  bool rate_overshoot = false;
};

inline BenchRow BenchCell(const PlanarImage& image, double target_bpp, LosslessCoderId coder,
                          const BaseConfig& base_template, int threads = 1) {
  std::optional<BaseConfig> cfg;
  if (target_bpp > 0) {
    cfg = base_template;
    cfg->target_bpp = target_bpp;
  }
  const TwoLayerEncoding enc = EncodeTwoLayerDetailed(image, cfg, coder, threads);
  const TwoLayerDecoding dec = DecodeTwoLayer(enc.file, threads);

  BenchRow row;
  row.coder = coder;
  row.target_bpp = target_bpp;
  row.base_bytes = enc.base_bytes;
  row.extension_bytes = enc.extension_bytes;
  row.overhead_bytes = kContainerHeaderSize;
  row.total_bytes = enc.file.size();
  const size_t w = image.width(), h = image.height();
  row.base_bpp = BitsPerPixel(row.base_bytes, w, h);
  row.ext_bpp = BitsPerPixel(row.extension_bytes, w, h);
  row.overhead_bpp = BitsPerPixel(row.overhead_bytes, w, h);
  row.total_bpp = BitsPerPixel(row.total_bytes, w, h);
  row.base_psnr = Psnr(image, enc.base_reconstruction);
  row.lossless = dec.lossless && dec.image == image;
  row.rate_overshoot = enc.rate_overshoot;
  return row;
}

// Rows come back sorted by (coder, target_bpp) whatever the thread count.
inline std::vector<BenchRow> BenchSweep(const PlanarImage& image, std::span<const double> grid,
                                        std::span<const LosslessCoderId> coders,
                                        const BaseConfig& base_template = {},
                                        int threads = 1) {
  Check(!grid.empty() && std::find(grid.begin(), grid.end(), 0.0) != grid.end(),
        ErrorCode::kInvalidArgument, "bpp grid must include 0 (no base layer)");
  Check(!coders.empty(), ErrorCode::kInvalidArgument, "no coders");
  for (double g : grid) {
    Check(g >= 0 && std::isfinite(g), ErrorCode::kInvalidArgument, "negative grid point");
  }
  std::vector<std::pair<LosslessCoderId, double>> cells;
  for (auto c : coders) {
    for (double g : grid) cells.emplace_back(c, g);
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

  std::vector<BenchRow> rows(cells.size());
  ParallelFor(cells.size(), threads, [&](size_t i) {
    rows[i] = BenchCell(image, cells[i].second, cells[i].first, base_template, 1);
  });
  return rows;
}

inline std::string FormatFixed4(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

inline constexpr const char* kBenchCsvHeader =
    "coder,target_bpp,base_bpp,base_psnr,ext_bpp,overhead_bpp,total_bpp,lossless";

inline std::string FormatBenchCsv(std::span<const BenchRow> rows) {
  std::string out = std::string(kBenchCsvHeader) + "\n";
  for (const auto& r : rows) {
    out += std::string(CoderName(r.coder)) + "," + FormatFixed4(r.target_bpp) + "," +
           FormatFixed4(r.base_bpp) + "," + FormatFixed4(r.base_psnr) + "," +
           FormatFixed4(r.ext_bpp) + "," + FormatFixed4(r.overhead_bpp) + "," +
           FormatFixed4(r.total_bpp) + "," + (r.lossless ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace tlxs

#endif  // TLXS_PIPELINE_HPP_
