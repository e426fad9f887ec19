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

#ifndef TLXS_METRICS_HPP_
#define TLXS_METRICS_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>

#include "tlxs/error.hpp"
#include "tlxs/image.hpp"

namespace tlxs {

inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

struct Metrics {
  double psnr_db = 0.0;
  double bpp = 0.0;
  size_t byte_count = 0;
};

inline double MeanSquaredError(const PlanarImage& a, const PlanarImage& b) {
  Check(a.SameShape(b), ErrorCode::kShapeMismatch, "psnr operands differ in shape");
  // Integer accumulation keeps MSE == 0 exact.
  uint64_t sse = 0;
  for (int c = 0; c < a.components(); ++c) {
    const auto& pa = a.plane(c).data;
    const auto& pb = b.plane(c).data;
    for (size_t i = 0; i < pa.size(); ++i) {
      const int64_t d = int64_t{pa[i]} - int64_t{pb[i]};
      sse += static_cast<uint64_t>(d * d);
    }
  }
  return static_cast<double>(sse) /
         static_cast<double>(a.pixels() * static_cast<size_t>(a.components()));
}

// MSE is pooled over all components; peak is 2^N - 1.
inline double Psnr(const PlanarImage& a, const PlanarImage& b) {
  const double mse = MeanSquaredError(a, b);
  if (mse == 0.0) return kInfinitePsnr;
  const double peak = static_cast<double>(a.max_sample());
  return 10.0 * std::log10(peak * peak / mse);
}

inline double BitsPerPixel(uint64_t byte_count, size_t width, size_t height) {
  Check(width > 0 && height > 0, ErrorCode::kInvalidArgument, "zero-area image");
  return 8.0 * static_cast<double>(byte_count) /
         (static_cast<double>(width) * static_cast<double>(height));
}

}  // namespace tlxs

#endif  // TLXS_METRICS_HPP_
