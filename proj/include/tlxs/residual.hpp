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

#ifndef TLXS_RESIDUAL_HPP_
#define TLXS_RESIDUAL_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "tlxs/error.hpp"
#include "tlxs/image.hpp"

namespace tlxs {

// Difference between an N-bit original and its base reconstruction.
//
// Unshifted: R = P - P', so -(2^N - 1) <= R <= 2^N - 1.
// Shifted:   R' = R + (2^N - 1), so 0 <= R' <= 2^(N+1) - 2, an (N+1)-bit
//            unsigned sample.
struct ResidualPlane {
  int depth = 0;  // N + 1
  bool shifted = false;
  Plane<int32_t> samples;

  int source_depth() const { return depth - 1; }
  size_t width() const { return samples.width; }
  size_t height() const { return samples.height; }

  bool operator==(const ResidualPlane&) const = default;
};

inline constexpr int32_t DcOffset(int source_depth) {
  return static_cast<int32_t>(MaxSample(source_depth));
}

inline void CheckResidualRange(const ResidualPlane& r) {
  const int32_t m = DcOffset(r.source_depth());
  const int32_t lo = r.shifted ? 0 : -m;
  const int32_t hi = r.shifted ? 2 * m : m;
  for (int32_t v : r.samples.data) {
    Check(v >= lo && v <= hi, ErrorCode::kSampleOutOfRange,
          "residual " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
              std::to_string(hi) + "]");
  }
}

// R(x, y) = P(x, y) - P'(x, y), one plane per component.
inline std::vector<ResidualPlane> ComputeResidual(const PlanarImage& original,
                                                  const PlanarImage& base) {
  Check(original.SameShape(base), ErrorCode::kShapeMismatch,
        "original and base reconstruction differ in shape or depth");
  std::vector<ResidualPlane> out;
  for (int c = 0; c < original.components(); ++c) {
    const auto& p = original.plane(c);
    const auto& q = base.plane(c);
    ResidualPlane r;
    r.depth = original.bit_depth() + 1;
    r.samples = Plane<int32_t>(p.width, p.height);
    for (size_t i = 0; i < p.data.size(); ++i) {
      r.samples.data[i] = int32_t{p.data[i]} - int32_t{q.data[i]};
    }
    out.push_back(std::move(r));
  }
  return out;
}

// R'(x, y) = R(x, y) + (2^N - 1).
inline ResidualPlane DcShift(const ResidualPlane& r, int source_depth) {
  Check(!r.shifted, ErrorCode::kInvalidArgument, "residual is already shifted");
  Check(r.depth == source_depth + 1, ErrorCode::kInvalidArgument, "depth mismatch");
  CheckResidualRange(r);
  ResidualPlane out = r;
  const int32_t off = DcOffset(source_depth);
  for (auto& v : out.samples.data) v += off;
  out.shifted = true;
  return out;
}

inline ResidualPlane DcUnshift(const ResidualPlane& r, int source_depth) {
  Check(r.shifted, ErrorCode::kInvalidArgument, "residual is not shifted");
  Check(r.depth == source_depth + 1, ErrorCode::kInvalidArgument, "depth mismatch");
  CheckResidualRange(r);
  ResidualPlane out = r;
  const int32_t off = DcOffset(source_depth);
  for (auto& v : out.samples.data) v -= off;
  out.shifted = false;
  return out;
}

// P = P' + R. Fails if the sum leaves the N-bit range.
inline PlanarImage AddResidual(const PlanarImage& base,
                               const std::vector<ResidualPlane>& residual) {
  Check(static_cast<int>(residual.size()) == base.components(), ErrorCode::kShapeMismatch,
        "residual component count");
  std::vector<Plane<uint16_t>> planes;
  const int32_t max = static_cast<int32_t>(base.max_sample());
  for (int c = 0; c < base.components(); ++c) {
    const auto& q = base.plane(c);
    const auto& r = residual[c];
    Check(!r.shifted && r.width() == q.width && r.height() == q.height,
          ErrorCode::kShapeMismatch, "residual plane shape");
    Plane<uint16_t> p(q.width, q.height);
    for (size_t i = 0; i < p.data.size(); ++i) {
      const int32_t v = int32_t{q.data[i]} + r.samples.data[i];
      Check(v >= 0 && v <= max, ErrorCode::kCorruptPayload,
            "reconstructed sample out of range");
      p.data[i] = static_cast<uint16_t>(v);
    }
    planes.push_back(std::move(p));
  }
  return PlanarImage::Create(base.bit_depth(), std::move(planes));
}

}  // namespace tlxs

#endif  // TLXS_RESIDUAL_HPP_
