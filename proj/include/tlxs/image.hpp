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

#ifndef TLXS_IMAGE_HPP_
#define TLXS_IMAGE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tlxs/error.hpp"

namespace tlxs {

// Row-major 2-D array of samples.
template <typename T>
struct Plane {
  Plane() = default;
  Plane(size_t w, size_t h, T fill = T{}) : width(w), height(h), data(w * h, fill) {}

  T& at(size_t x, size_t y) { return data[y * width + x]; }
  const T& at(size_t x, size_t y) const { return data[y * width + x]; }

  std::span<T> row(size_t y) { return {data.data() + y * width, width}; }
  std::span<const T> row(size_t y) const { return {data.data() + y * width, width}; }

  size_t size() const { return data.size(); }

  bool operator==(const Plane&) const = default;

  size_t width = 0;
  size_t height = 0;
  std::vector<T> data;
};

inline constexpr int kMinBitDepth = 8;
inline constexpr int kMaxBitDepth = 16;

inline constexpr uint32_t MaxSample(int bit_depth) {
  return (uint32_t{1} << bit_depth) - 1;
}

// An image of 1 or 3 unsigned planes at bit depth N. Immutable once built;
// the factory validates every invariant.
class PlanarImage {
 public:
  PlanarImage() = default;

  static PlanarImage Create(int bit_depth, std::vector<Plane<uint16_t>> planes) {
    Check(planes.size() == 1 || planes.size() == 3, ErrorCode::kInvalidArgument,
          "components must be 1 or 3");
    Check(bit_depth >= kMinBitDepth && bit_depth <= kMaxBitDepth,
          ErrorCode::kInvalidArgument,
          "bit depth " + std::to_string(bit_depth) + " outside 8..16");
    const size_t w = planes[0].width, h = planes[0].height;
    Check(w > 0 && h > 0, ErrorCode::kInvalidArgument, "empty image");
    const uint32_t max = MaxSample(bit_depth);
    for (const auto& p : planes) {
      Check(p.width == w && p.height == h && p.data.size() == w * h,
            ErrorCode::kShapeMismatch, "plane dimensions differ");
      for (uint16_t s : p.data) {
        Check(s <= max, ErrorCode::kSampleOutOfRange,
              "sample " + std::to_string(s) + " exceeds " + std::to_string(max));
      }
    }
    PlanarImage img;
    img.bit_depth_ = bit_depth;
    img.planes_ = std::move(planes);
    return img;
  }

  // Convenience for single-plane images built from a flat sample list.
  static PlanarImage Gray(size_t width, size_t height, int bit_depth,
                          std::vector<uint16_t> samples) {
    Plane<uint16_t> p;
    p.width = width;
    p.height = height;
    p.data = std::move(samples);
    std::vector<Plane<uint16_t>> planes;
    planes.push_back(std::move(p));
    return Create(bit_depth, std::move(planes));
  }

  size_t width() const { return planes_.empty() ? 0 : planes_[0].width; }
  size_t height() const { return planes_.empty() ? 0 : planes_[0].height; }
  size_t pixels() const { return width() * height(); }
  int components() const { return static_cast<int>(planes_.size()); }
  int bit_depth() const { return bit_depth_; }
  uint32_t max_sample() const { return MaxSample(bit_depth_); }

  const Plane<uint16_t>& plane(int c) const { return planes_.at(c); }
  const std::vector<Plane<uint16_t>>& planes() const { return planes_; }

  bool SameShape(const PlanarImage& o) const {
    return width() == o.width() && height() == o.height() &&
           components() == o.components() && bit_depth_ == o.bit_depth_;
  }

  bool operator==(const PlanarImage&) const = default;

 private:
  int bit_depth_ = 0;
  std::vector<Plane<uint16_t>> planes_;
};

}  // namespace tlxs

#endif  // TLXS_IMAGE_HPP_
