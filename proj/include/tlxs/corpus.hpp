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

#ifndef TLXS_CORPUS_HPP_
#define TLXS_CORPUS_HPP_

// Deterministic synthetic test images at any bit depth 8..16. Samples are
// derived from raw mt19937 output, never from <random> distributions, so
// the corpus is identical on every standard library.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tlxs/error.hpp"
#include "tlxs/image.hpp"

namespace tlxs {

enum class SyntheticKind { kGradient, kNoise, kText, kConstant, kCheckerboard, kNatural };

inline constexpr SyntheticKind kAllSyntheticKinds[] = {
    SyntheticKind::kGradient,     SyntheticKind::kNoise,   SyntheticKind::kText,
    SyntheticKind::kConstant,     SyntheticKind::kCheckerboard, SyntheticKind::kNatural};

inline std::string_view SyntheticName(SyntheticKind k) {
  switch (k) {
    case SyntheticKind::kGradient: return "gradient";
    case SyntheticKind::kNoise: return "noise";
    case SyntheticKind::kText: return "text";
    case SyntheticKind::kConstant: return "constant";
    case SyntheticKind::kCheckerboard: return "checkerboard";
    case SyntheticKind::kNatural: return "natural";
  }
  return "?";
}

inline std::optional<SyntheticKind> ParseSyntheticName(std::string_view name) {
  for (auto k : kAllSyntheticKinds) {
    if (SyntheticName(k) == name) return k;
  }
  return std::nullopt;
}

namespace corpus_detail {

inline double Unit(std::mt19937& rng) { return rng() / 4294967296.0; }

inline uint16_t Clamp(double v, uint32_t max) {
  if (v < 0) return 0;
  if (v > max) return static_cast<uint16_t>(max);
  return static_cast<uint16_t>(std::lround(v));
}

inline double Sample(SyntheticKind kind, size_t x, size_t y, size_t w, size_t h, int c,
                     uint32_t max, std::mt19937& rng,
                     const std::vector<std::array<double, 5>>& blobs) {
  const double fx = static_cast<double>(x) / static_cast<double>(w);
  const double fy = static_cast<double>(y) / static_cast<double>(h);
  switch (kind) {
    case SyntheticKind::kGradient:
      return max * (0.5 * fx + 0.5 * fy) * (c == 1 ? 0.8 : 1.0);
    case SyntheticKind::kNoise:
      return static_cast<double>(rng() % (max + 1));
    case SyntheticKind::kText: {
      // Dark strokes on a light page: 8x12 glyph cells with pseudo-random
      // horizontal and vertical bars.
      const size_t cx = x / 8, cy = y / 12, gx = x % 8, gy = y % 12;
      const uint32_t glyph = static_cast<uint32_t>((cx * 2654435761u) ^ (cy * 40503u));
      const bool line_gap = gy >= 10 || gx >= 6;
      bool ink = false;
      if (!line_gap) {
        if ((glyph & 1) && gx == 0) ink = true;
        if ((glyph & 2) && gx == 5) ink = true;
        if ((glyph & 4) && gy == 0) ink = true;
        if ((glyph & 8) && gy == 4) ink = true;
        if ((glyph & 16) && gy == 9) ink = true;
        if ((glyph & 32) && gx == gy / 2) ink = true;
      }
      return ink ? max * 0.08 : max * 0.94;
    }
    case SyntheticKind::kConstant:
      return max * 0.5;
    case SyntheticKind::kCheckerboard:
      return ((x / 8 + y / 8) % 2) ? max * 0.9 : max * 0.1;
    case SyntheticKind::kNatural: {
      double v = 0.35 + 0.12 * std::sin(6.1 * fx + 1.3 * c) * std::cos(4.3 * fy) +
                 0.05 * std::sin(37.0 * fx + 23.0 * fy);
      for (const auto& b : blobs) {
        const double dx = fx - b[0], dy = fy - b[1];
        if (dx * dx + dy * dy < b[2] * b[2]) v += b[3] * (1.0 - 0.3 * (c == 2) * b[4]);
      }
      v += 0.01 * (Unit(rng) - 0.5);
      return v * max;
    }
  }
  return 0;
}

}  // namespace corpus_detail

inline PlanarImage MakeSynthetic(SyntheticKind kind, size_t width, size_t height,
                                 int bit_depth, int components = 1, uint32_t seed = 1) {
  Check(width > 0 && height > 0, ErrorCode::kInvalidArgument, "empty synthetic image");
  std::mt19937 rng(seed * 7919u + static_cast<uint32_t>(kind));
  std::vector<std::array<double, 5>> blobs;
  for (int i = 0; i < 12; ++i) {
    blobs.push_back({corpus_detail::Unit(rng), corpus_detail::Unit(rng),
                     0.03 + 0.15 * corpus_detail::Unit(rng),
                     0.3 * (corpus_detail::Unit(rng) - 0.4), corpus_detail::Unit(rng)});
  }
  const uint32_t max = MaxSample(bit_depth);
  std::vector<Plane<uint16_t>> planes(components, Plane<uint16_t>(width, height));
  for (int c = 0; c < components; ++c) {
    for (size_t y = 0; y < height; ++y) {
      for (size_t x = 0; x < width; ++x) {
        planes[c].at(x, y) = corpus_detail::Clamp(
            corpus_detail::Sample(kind, x, y, width, height, c, max, rng, blobs), max);
      }
    }
  }
  return PlanarImage::Create(bit_depth, std::move(planes));
}

// Re-expresses an image at another depth. Going deeper shifts left and fills
// the new low bits with deterministic noise, the way a higher-precision
// capture of the same scene would look.
inline PlanarImage ChangeBitDepth(const PlanarImage& image, int bit_depth, uint32_t seed = 1) {
  if (bit_depth == image.bit_depth()) return image;
  std::mt19937 rng(seed);
  std::vector<Plane<uint16_t>> planes;
  for (const auto& p : image.planes()) {
    Plane<uint16_t> q(p.width, p.height);
    for (size_t i = 0; i < p.data.size(); ++i) {
      if (bit_depth > image.bit_depth()) {
        const int shift = bit_depth - image.bit_depth();
        q.data[i] = static_cast<uint16_t>((uint32_t{p.data[i]} << shift) |
                                          (rng() & ((1u << shift) - 1)));
      } else {
        q.data[i] = static_cast<uint16_t>(p.data[i] >> (image.bit_depth() - bit_depth));
      }
    }
    planes.push_back(std::move(q));
  }
  return PlanarImage::Create(bit_depth, std::move(planes));
}

// Top-left crop.
inline PlanarImage Crop(const PlanarImage& image, size_t width, size_t height) {
  Check(width <= image.width() && height <= image.height() && width > 0 && height > 0,
        ErrorCode::kInvalidArgument, "crop outside image");
  std::vector<Plane<uint16_t>> planes;
  for (const auto& p : image.planes()) {
    Plane<uint16_t> q(width, height);
    for (size_t y = 0; y < height; ++y) {
      for (size_t x = 0; x < width; ++x) q.at(x, y) = p.at(x, y);
    }
    planes.push_back(std::move(q));
  }
  return PlanarImage::Create(image.bit_depth(), std::move(planes));
}

}  // namespace tlxs

#endif  // TLXS_CORPUS_HPP_
