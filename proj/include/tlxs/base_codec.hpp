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

#ifndef TLXS_BASE_CODEC_HPP_
#define TLXS_BASE_CODEC_HPP_

// Low-latency lossy base codec. This is an XS-like profile with its own
// bitstream, not an ISO/IEC 21122 implementation: a horizontal-dominant
// 5/3 decomposition (at most two vertical stages), dead-zone quantization
// with one global step, and per-band Golomb-Rice coding with the Rice
// parameter stored in the header. Bands are coded in groups of four
// coefficients: a significance bit per group, then the Rice codes of the
// group's four indices only when the bit is set.
//
// Payload layout (big-endian):
//   "XSB1" | width u32 | height u32 | components u8 | bit_depth u8 |
//   levels_h:4 levels_v:4 |
//   per component, per band: step u16 | rice k u8 | coded bits u32 |
//   band bitstreams, each zero-padded to a byte boundary.
//

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tlxs/bitio.hpp"
#include "tlxs/error.hpp"
#include "tlxs/image.hpp"
#include "tlxs/parallel.hpp"
#include "tlxs/quantizer.hpp"
#include "tlxs/rice.hpp"
#include "tlxs/wavelet.hpp"

namespace tlxs {

struct BaseConfig {
  // Sentinel target: every quantization step is 1, so the base is lossless.
  static constexpr double kLosslessBase = -1.0;

  int levels_h = 5;
  int levels_v = 2;
  double target_bpp = 2.0;
  double rate_tolerance = 0.02;

  bool lossless() const { return target_bpp == kLosslessBase; }

  void Validate() const {
    Check(levels_h >= 1 && levels_h <= 6, ErrorCode::kInvalidArgument,
          "levels_h must be in 1..6");
    Check(levels_v >= 0 && levels_v <= 2 && levels_v <= levels_h,
          ErrorCode::kInvalidArgument, "levels_v must be in 0..min(2, levels_h)");
    Check(lossless() || (std::isfinite(target_bpp) && target_bpp > 0),
          ErrorCode::kInvalidArgument, "target_bpp must be positive");
    Check(rate_tolerance >= 0 && rate_tolerance < 1, ErrorCode::kInvalidArgument,
          "rate_tolerance must be in [0, 1)");
  }
};

inline constexpr char kBaseMagic[5] = "XSB1";
inline constexpr int32_t kMinStep = 1;
inline constexpr int32_t kMaxStep = 0xFFFF;
inline constexpr int kMaxRateProbes = 20;
// Far above any coefficient a 16-bit image produces; keeps inverse lifting
// of a corrupt payload inside int32.
inline constexpr int64_t kMaxCoefficient = int64_t{1} << 24;

// Per-band weight applied to the global quantizer scale. Flat for now; a
// perceptual weighting would vary this by band kind and level.
inline double BandGain(const BandInfo& /*band*/) { return 1.0; }

inline int32_t BandStep(double scale, const BandInfo& band) {
  const double s = std::round(scale * BandGain(band));
  return static_cast<int32_t>(std::clamp<double>(s, kMinStep, kMaxStep));
}

struct BandParams {
  int32_t step = 1;
  int rice_k = 0;
  uint32_t coded_bits = 0;
};

struct BaseHeader {
  uint32_t width = 0;
  uint32_t height = 0;
  int components = 0;
  int bit_depth = 0;
  int levels_h = 0;
  int levels_v = 0;
  BandLayout layout;
  std::vector<std::vector<BandParams>> bands;  // [component][band]
  size_t data_offset = 0;                      // first byte of band data

  static size_t SizeFor(int components, size_t band_count) {
    return 4 + 4 + 4 + 1 + 1 + 1 + static_cast<size_t>(components) * band_count * 7;
  }
};

struct BaseBitstream {
  std::vector<uint8_t> bytes;
  int32_t scale = 1;            // global quantizer scale selected
  bool rate_overshoot = false;  // target unreachable even at the coarsest scale
  int rate_probes = 0;
};

namespace base_detail {

// Transform-domain representation of one component, DC-shifted by 2^(N-1).
inline Subbands Analyze(const Plane<uint16_t>& plane, int bit_depth, int levels_h,
                        int levels_v) {
  Plane<int32_t> p(plane.width, plane.height);
  const int32_t offset = int32_t{1} << (bit_depth - 1);
  for (size_t i = 0; i < p.data.size(); ++i) p.data[i] = int32_t{plane.data[i]} - offset;
  return Decompose(p, levels_h, levels_v);
}

inline constexpr size_t kGroupSize = 4;

inline size_t GroupCount(size_t count) { return (count + kGroupSize - 1) / kGroupSize; }

// Indices of all significant groups, concatenated.
inline std::vector<int32_t> SignificantValues(std::span<const int32_t> indices) {
  std::vector<int32_t> out;
  for (size_t g = 0; g < indices.size(); g += kGroupSize) {
    const auto group = indices.subspan(g, std::min(kGroupSize, indices.size() - g));
    if (std::any_of(group.begin(), group.end(), [](int32_t v) { return v != 0; })) {
      out.insert(out.end(), group.begin(), group.end());
    }
  }
  return out;
}

inline uint64_t GroupedBandLength(std::span<const int32_t> indices, int k) {
  return GroupCount(indices.size()) + CodedBandLength(SignificantValues(indices), k);
}

inline void EncodeGroupedBand(BitWriter& w, std::span<const int32_t> indices, int k) {
  for (size_t g = 0; g < indices.size(); g += kGroupSize) {
    const auto group = indices.subspan(g, std::min(kGroupSize, indices.size() - g));
    const bool significant =
        std::any_of(group.begin(), group.end(), [](int32_t v) { return v != 0; });
    w.PutBit(significant ? 1 : 0);
    if (significant) EncodeBand(w, group, k);
  }
}

inline std::vector<int32_t> DecodeGroupedBand(BitReader& r, size_t count, int k) {
  std::vector<int32_t> out(count, 0);
  for (size_t g = 0; g < count; g += kGroupSize) {
    if (!r.GetBit()) continue;
    const size_t n = std::min(kGroupSize, count - g);
    const auto group = DecodeBand(r, n, k);
    std::copy(group.begin(), group.end(), out.begin() + static_cast<std::ptrdiff_t>(g));
  }
  return out;
}

struct CodedBand {
  std::vector<int32_t> indices;
  BandParams params;
};

inline CodedBand QuantizeBand(const Plane<int32_t>& band, int32_t step) {
  CodedBand cb;
  cb.indices.resize(band.data.size());
  for (size_t i = 0; i < band.data.size(); ++i) {
    cb.indices[i] = QuantizeDeadzone(band.data[i], step);
  }
  cb.params.step = step;
  const auto significant = SignificantValues(cb.indices);
  cb.params.rice_k = ChooseRiceK(significant);
  const uint64_t bits =
      GroupCount(cb.indices.size()) + CodedBandLength(significant, cb.params.rice_k);
  Check(bits <= 0xFFFFFFFFull, ErrorCode::kInvalidArgument, "band too large");
  cb.params.coded_bits = static_cast<uint32_t>(bits);
  return cb;
}

inline uint64_t PayloadBytes(const std::vector<Subbands>& comps, double scale,
                             int threads) {
  std::vector<uint64_t> per(comps.size(), 0);
  ParallelFor(comps.size(), threads, [&](size_t c) {
    for (size_t b = 0; b < comps[c].bands.size(); ++b) {
      const auto cb = QuantizeBand(comps[c].bands[b], BandStep(scale, comps[c].layout[b]));
      per[c] += (uint64_t{cb.params.coded_bits} + 7) / 8;
    }
  });
  uint64_t total = BaseHeader::SizeFor(static_cast<int>(comps.size()),
                                       comps.front().layout.size());
  for (uint64_t v : per) total += v;
  return total;
}

}  // namespace base_detail

// Picks the smallest global scale whose payload fits target*(1+tolerance)
// bits per pixel, by bisection over [1, 65535]. Falls back to the coarsest
// scale (with rate_overshoot set) when nothing fits.
struct RateDecision {
  int32_t scale = 1;
  bool overshoot = false;
  int probes = 0;
};

inline RateDecision RateControl(const std::vector<Subbands>& comps, size_t pixels,
                                const BaseConfig& config, int threads = 1) {
  Check(!config.lossless() && config.target_bpp > 0, ErrorCode::kInvalidArgument,
        "rate control needs a positive target");
  const double budget_bits =
      config.target_bpp * (1.0 + config.rate_tolerance) * static_cast<double>(pixels);
  RateDecision d;
  auto fits = [&](int32_t scale) {
    ++d.probes;
    return 8.0 * static_cast<double>(base_detail::PayloadBytes(comps, scale, threads)) <=
           budget_bits;
  };
  if (fits(kMinStep)) {
    d.scale = kMinStep;
    return d;
  }
  if (!fits(kMaxStep)) {
    d.scale = kMaxStep;
    d.overshoot = true;
    return d;
  }
  // fits(lo) is false, fits(hi) is true.
  int32_t lo = kMinStep, hi = kMaxStep;
  while (hi - lo > 1 && d.probes < kMaxRateProbes) {
    const int32_t mid = lo + (hi - lo) / 2;
    if (fits(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  d.scale = hi;
  return d;
}

inline std::vector<Subbands> AnalyzeImage(const PlanarImage& image, int levels_h,
                                          int levels_v, int threads = 1) {
  std::vector<Subbands> comps(image.components());
  ParallelFor(comps.size(), threads, [&](size_t c) {
    comps[c] = base_detail::Analyze(image.plane(static_cast<int>(c)), image.bit_depth(),
                                    levels_h, levels_v);
  });
  return comps;
}

// Per-component steps chosen by the rate controller for `image`.
inline std::vector<std::vector<int32_t>> RateControlSteps(const PlanarImage& image,
                                                          const BaseConfig& config,
                                                          int threads = 1) {
  config.Validate();
  const auto comps = AnalyzeImage(image, config.levels_h, config.levels_v, threads);
  const RateDecision d = RateControl(comps, image.pixels(), config, threads);
  std::vector<std::vector<int32_t>> steps;
  for (const auto& sb : comps) {
    std::vector<int32_t> s;
    for (const auto& band : sb.layout) s.push_back(BandStep(d.scale, band));
    steps.push_back(std::move(s));
  }
  return steps;
}

inline BaseBitstream EncodeBase(const PlanarImage& image, const BaseConfig& config,
                                int threads = 1) {
  config.Validate();
  Check(image.components() > 0, ErrorCode::kInvalidArgument, "empty image");
  const auto comps = AnalyzeImage(image, config.levels_h, config.levels_v, threads);

  BaseBitstream out;
  if (!config.lossless()) {
    const RateDecision d = RateControl(comps, image.pixels(), config, threads);
    out.scale = d.scale;
    out.rate_overshoot = d.overshoot;
    out.rate_probes = d.probes;
  }

  const size_t band_count = comps.front().layout.size();
  std::vector<std::vector<base_detail::CodedBand>> coded(comps.size());
  ParallelFor(comps.size(), threads, [&](size_t c) {
    for (size_t b = 0; b < band_count; ++b) {
      coded[c].push_back(base_detail::QuantizeBand(
          comps[c].bands[b], BandStep(out.scale, comps[c].layout[b])));
    }
  });

  // Single writer in canonical order.
  ByteWriter w;
  w.Tag(kBaseMagic);
  w.U32(static_cast<uint32_t>(image.width()));
  w.U32(static_cast<uint32_t>(image.height()));
  w.U8(static_cast<uint32_t>(image.components()));
  w.U8(static_cast<uint32_t>(image.bit_depth()));
  w.U8(static_cast<uint32_t>((config.levels_h << 4) | config.levels_v));
  for (const auto& comp : coded) {
    for (const auto& cb : comp) {
      w.U16(static_cast<uint32_t>(cb.params.step));
      w.U8(static_cast<uint32_t>(cb.params.rice_k));
      w.U32(cb.params.coded_bits);
    }
  }
  for (const auto& comp : coded) {
    for (const auto& cb : comp) {
      BitWriter bw;
      base_detail::EncodeGroupedBand(bw, cb.indices, cb.params.rice_k);
      w.Bytes(bw.bytes());
    }
  }
  out.bytes = std::move(w).Take();
  return out;
}

// Parses and validates the payload header without touching band data.
inline BaseHeader ParseBaseHeader(std::span<const uint8_t> payload) {
  ByteReader r(payload);
  Check(r.MatchTag(kBaseMagic), ErrorCode::kBadMagic, "base payload magic");
  BaseHeader h;
  h.width = r.U32();
  h.height = r.U32();
  h.components = static_cast<int>(r.U8());
  h.bit_depth = static_cast<int>(r.U8());
  const uint32_t levels = r.U8();
  h.levels_h = static_cast<int>(levels >> 4);
  h.levels_v = static_cast<int>(levels & 0xF);
  Check(h.width > 0 && h.height > 0, ErrorCode::kMalformedHeader, "zero dimension");
  Check(h.components == 1 || h.components == 3, ErrorCode::kMalformedHeader,
        "components must be 1 or 3");
  Check(h.bit_depth >= kMinBitDepth && h.bit_depth <= kMaxBitDepth,
        ErrorCode::kMalformedHeader, "bit depth outside 8..16");
  Check(h.levels_h >= 1 && h.levels_h <= 6 && h.levels_v <= 2 && h.levels_v <= h.levels_h,
        ErrorCode::kMalformedHeader, "invalid decomposition levels");
  h.layout = ComputeLayout(h.width, h.height, h.levels_h, h.levels_v);

  uint64_t data_bytes = 0;
  h.bands.resize(h.components);
  for (auto& comp : h.bands) {
    for (const BandInfo& info : h.layout) {
      BandParams p;
      p.step = static_cast<int32_t>(r.U16());
      p.rice_k = static_cast<int>(r.U8());
      p.coded_bits = r.U32();
      Check(p.step >= kMinStep, ErrorCode::kMalformedHeader, "zero quantization step");
      Check(p.rice_k <= kMaxRiceK, ErrorCode::kMalformedHeader, "rice k out of range");
      // Every group costs at least its significance bit.
      Check(uint64_t{p.coded_bits} >= base_detail::GroupCount(info.size()) &&
                (info.size() > 0 || p.coded_bits == 0),
            ErrorCode::kCorruptPayload, "band length inconsistent with band size");
      data_bytes += (uint64_t{p.coded_bits} + 7) / 8;
      comp.push_back(p);
    }
  }
  h.data_offset = r.position();
  Check(data_bytes == r.remaining(), ErrorCode::kLengthMismatch,
        "band data is " + std::to_string(r.remaining()) + " bytes, header declares " +
            std::to_string(data_bytes));
  return h;
}

inline PlanarImage DecodeBase(std::span<const uint8_t> payload, int threads = 1) {
  const BaseHeader h = ParseBaseHeader(payload);

  // Byte offsets of each component's band data.
  std::vector<size_t> offsets(h.components);
  size_t pos = h.data_offset;
  for (int c = 0; c < h.components; ++c) {
    offsets[c] = pos;
    for (const auto& p : h.bands[c]) pos += (size_t{p.coded_bits} + 7) / 8;
  }

  const int32_t offset = int32_t{1} << (h.bit_depth - 1);
  const int32_t max = static_cast<int32_t>(MaxSample(h.bit_depth));
  std::vector<Plane<uint16_t>> planes(h.components);
  ParallelFor(planes.size(), threads, [&](size_t c) {
    Subbands sb;
    sb.layout = h.layout;
    size_t at = offsets[c];
    for (size_t b = 0; b < h.layout.size(); ++b) {
      const BandParams& p = h.bands[c][b];
      const size_t nbytes = (size_t{p.coded_bits} + 7) / 8;
      BitReader br(payload.subspan(at, nbytes), p.coded_bits);
      std::vector<int32_t> idx =
          base_detail::DecodeGroupedBand(br, h.layout[b].size(), p.rice_k);
      Check(br.remaining() == 0, ErrorCode::kCorruptPayload,
            "band " + std::to_string(b) + " has trailing bits");
      Plane<int32_t> band(h.layout[b].width, h.layout[b].height);
      for (size_t i = 0; i < idx.size(); ++i) {
        const int64_t v = int64_t{idx[i]} * p.step;
        Check(v > -kMaxCoefficient && v < kMaxCoefficient, ErrorCode::kCorruptPayload,
              "coefficient out of range");
        band.data[i] = DequantizeDeadzone(idx[i], p.step);
      }
      sb.bands.push_back(std::move(band));
      at += nbytes;
    }
    const Plane<int32_t> rec = Recompose(sb);
    Plane<uint16_t> out(h.width, h.height);
    for (size_t i = 0; i < rec.data.size(); ++i) {
      out.data[i] = static_cast<uint16_t>(std::clamp(rec.data[i] + offset, 0, max));
    }
    planes[c] = std::move(out);
  });
  return PlanarImage::Create(h.bit_depth, std::move(planes));
}

}  // namespace tlxs

#endif  // TLXS_BASE_CODEC_HPP_
