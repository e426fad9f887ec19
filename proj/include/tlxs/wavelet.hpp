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

#ifndef TLXS_WAVELET_HPP_
#define TLXS_WAVELET_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tlxs/error.hpp"
#include "tlxs/image.hpp"

namespace tlxs {

// Reversible LeGall 5/3 lifting with whole-sample symmetric extension.
//
//   d[i] = x[2i+1] - floor((x[2i] + x[2i+2]) / 2)
//   s[i] = x[2i]   + floor((d[i-1] + d[i] + 2) / 4)
//
// A line of length n splits into ceil(n/2) low and floor(n/2) high samples.
struct LiftingSplit {
  std::vector<int32_t> low;
  std::vector<int32_t> high;
};

namespace dwt_detail {

// Forward lifting over a strided line; writes low/high into separate buffers.
inline void Forward(const int32_t* x, size_t n, size_t stride, int32_t* low,
                    int32_t* high) {
  const size_t nh = n / 2;
  const size_t nl = n - nh;
  auto X = [&](size_t i) { return x[i * stride]; };
  for (size_t i = 0; i < nh; ++i) {
    const int32_t right = (2 * i + 2 < n) ? X(2 * i + 2) : X(2 * i);
    high[i] = X(2 * i + 1) - ((X(2 * i) + right) >> 1);
  }
  for (size_t i = 0; i < nl; ++i) {
    if (nh == 0) {
      low[i] = X(2 * i);
      continue;
    }
    const int32_t dl = high[i == 0 ? 0 : i - 1];
    const int32_t dr = high[i < nh ? i : nh - 1];
    low[i] = X(2 * i) + ((dl + dr + 2) >> 2);
  }
}

inline void Inverse(const int32_t* low, const int32_t* high, size_t n, int32_t* x,
                    size_t stride) {
  const size_t nh = n / 2;
  const size_t nl = n - nh;
  auto X = [&](size_t i) -> int32_t& { return x[i * stride]; };
  for (size_t i = 0; i < nl; ++i) {
    if (nh == 0) {
      X(2 * i) = low[i];
      continue;
    }
    const int32_t dl = high[i == 0 ? 0 : i - 1];
    const int32_t dr = high[i < nh ? i : nh - 1];
    X(2 * i) = low[i] - ((dl + dr + 2) >> 2);
  }
  for (size_t i = 0; i < nh; ++i) {
    const int32_t right = (2 * i + 2 < n) ? X(2 * i + 2) : X(2 * i);
    X(2 * i + 1) = high[i] + ((X(2 * i) + right) >> 1);
  }
}

}  // namespace dwt_detail

inline LiftingSplit Dwt53Forward(std::span<const int32_t> line) {
  Check(!line.empty(), ErrorCode::kInvalidArgument, "empty line");
  LiftingSplit out;
  out.low.resize(line.size() - line.size() / 2);
  out.high.resize(line.size() / 2);
  dwt_detail::Forward(line.data(), line.size(), 1, out.low.data(), out.high.data());
  return out;
}

inline std::vector<int32_t> Dwt53Inverse(std::span<const int32_t> low,
                                         std::span<const int32_t> high) {
  Check(!low.empty() && (low.size() == high.size() || low.size() == high.size() + 1),
        ErrorCode::kInvalidArgument,
        "inconsistent low/high lengths " + std::to_string(low.size()) + "/" +
            std::to_string(high.size()));
  const size_t n = low.size() + high.size();
  std::vector<int32_t> x(n);
  dwt_detail::Inverse(low.data(), high.data(), n, x.data(), 1);
  return x;
}

// Subband kinds. The first letter is the horizontal filter, the second the
// vertical one; kH is the high band of a horizontal-only stage.
enum class BandKind : uint8_t { kLL, kH, kHL, kLH, kHH };

inline const char* BandKindName(BandKind k) {
  switch (k) {
    case BandKind::kLL: return "LL";
    case BandKind::kH: return "H";
    case BandKind::kHL: return "HL";
    case BandKind::kLH: return "LH";
    case BandKind::kHH: return "HH";
  }
  return "?";
}

struct BandInfo {
  BandKind kind;
  int level;  // 1 = finest stage; 0 for the final LL
  size_t width;
  size_t height;

  size_t size() const { return width * height; }
  bool operator==(const BandInfo&) const = default;
};

// Canonical band order: the residual LL first, then detail bands from the
// coarsest stage to the finest; each stage lists HL, LH, HH (two-way split)
// or H (horizontal-only split).
using BandLayout = std::vector<BandInfo>;

inline constexpr int kMaxDecompositionLevels = 8;

inline void ValidateLevels(int levels_h, int levels_v) {
  Check(levels_h >= 0 && levels_h <= kMaxDecompositionLevels && levels_v >= 0 &&
            levels_v <= levels_h,
        ErrorCode::kInvalidArgument,
        "invalid decomposition levels h=" + std::to_string(levels_h) +
            " v=" + std::to_string(levels_v));
}

// Stage l (1-based) is horizontal plus vertical when l <= levels_v and
// horizontal only otherwise.
inline BandLayout ComputeLayout(size_t width, size_t height, int levels_h, int levels_v) {
  ValidateLevels(levels_h, levels_v);
  std::vector<std::vector<BandInfo>> stages;
  size_t cw = width, ch = height;
  for (int l = 1; l <= levels_h; ++l) {
    const size_t wl = cw - cw / 2, wh = cw / 2;
    std::vector<BandInfo> details;
    if (l <= levels_v) {
      const size_t hl = ch - ch / 2, hh = ch / 2;
      details.push_back({BandKind::kHL, l, wh, hl});
      details.push_back({BandKind::kLH, l, wl, hh});
      details.push_back({BandKind::kHH, l, wh, hh});
      ch = hl;
    } else {
      details.push_back({BandKind::kH, l, wh, ch});
    }
    cw = wl;
    stages.push_back(std::move(details));
  }
  BandLayout layout;
  layout.push_back({BandKind::kLL, 0, cw, ch});
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    layout.insert(layout.end(), it->begin(), it->end());
  }
  return layout;
}

struct Subbands {
  BandLayout layout;
  std::vector<Plane<int32_t>> bands;  // parallel to layout
};

inline Subbands Decompose(const Plane<int32_t>& plane, int levels_h, int levels_v) {
  Check(plane.width > 0 && plane.height > 0 && plane.data.size() == plane.size(),
        ErrorCode::kInvalidArgument, "invalid plane");
  Subbands out;
  out.layout = ComputeLayout(plane.width, plane.height, levels_h, levels_v);

  std::vector<std::vector<Plane<int32_t>>> stages;
  Plane<int32_t> cur = plane;
  for (int l = 1; l <= levels_h; ++l) {
    const size_t cw = cur.width, ch = cur.height;
    const size_t wl = cw - cw / 2, wh = cw / 2;
    Plane<int32_t> lo(wl, ch), hi(wh, ch);
    for (size_t y = 0; y < ch; ++y) {
      dwt_detail::Forward(cur.row(y).data(), cw, 1, lo.row(y).data(),
                          wh ? hi.row(y).data() : nullptr);
    }
    std::vector<Plane<int32_t>> details;
    if (l <= levels_v) {
      const size_t hl = ch - ch / 2, hh = ch / 2;
      auto split_columns = [&](const Plane<int32_t>& src, Plane<int32_t>& top,
                               Plane<int32_t>& bottom) {
        std::vector<int32_t> t(hl), b(hh);
        for (size_t x = 0; x < src.width; ++x) {
          dwt_detail::Forward(src.data.data() + x, ch, src.width, t.data(), b.data());
          for (size_t y = 0; y < hl; ++y) top.at(x, y) = t[y];
          for (size_t y = 0; y < hh; ++y) bottom.at(x, y) = b[y];
        }
      };
      Plane<int32_t> ll(wl, hl), lh(wl, hh), hl_band(wh, hl), hh_band(wh, hh);
      split_columns(lo, ll, lh);
      split_columns(hi, hl_band, hh_band);
      details.push_back(std::move(hl_band));
      details.push_back(std::move(lh));
      details.push_back(std::move(hh_band));
      cur = std::move(ll);
    } else {
      details.push_back(std::move(hi));
      cur = std::move(lo);
    }
    stages.push_back(std::move(details));
  }
  out.bands.push_back(std::move(cur));
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    for (auto& b : *it) out.bands.push_back(std::move(b));
  }
  return out;
}

// Exact inverse of Decompose. The final plane size is recovered from the
// layout, so the layout must be the one Decompose produced.
inline Plane<int32_t> Recompose(const Subbands& sb) {
  const BandLayout& layout = sb.layout;
  Check(!layout.empty() && layout.size() == sb.bands.size() &&
            layout[0].kind == BandKind::kLL,
        ErrorCode::kInvalidArgument, "layout does not match bands");
  for (size_t i = 0; i < layout.size(); ++i) {
    Check(sb.bands[i].width == layout[i].width && sb.bands[i].height == layout[i].height &&
              sb.bands[i].data.size() == layout[i].size(),
          ErrorCode::kInvalidArgument, "band " + std::to_string(i) + " size mismatch");
  }

  Plane<int32_t> cur = sb.bands[0];
  size_t idx = 1;
  while (idx < layout.size()) {
    const BandInfo& first = layout[idx];
    if (first.kind == BandKind::kH) {
      const Plane<int32_t>& hi = sb.bands[idx];
      Check(hi.height == cur.height && (cur.width == hi.width || cur.width == hi.width + 1),
            ErrorCode::kInvalidArgument, "H band does not fit");
      const size_t w = cur.width + hi.width;
      Plane<int32_t> next(w, cur.height);
      for (size_t y = 0; y < cur.height; ++y) {
        dwt_detail::Inverse(cur.row(y).data(), hi.width ? hi.row(y).data() : nullptr, w,
                            next.row(y).data(), 1);
      }
      cur = std::move(next);
      idx += 1;
    } else {
      Check(idx + 2 < layout.size() && first.kind == BandKind::kHL &&
                layout[idx + 1].kind == BandKind::kLH &&
                layout[idx + 2].kind == BandKind::kHH,
            ErrorCode::kInvalidArgument, "malformed two-way stage");
      const Plane<int32_t>& hl = sb.bands[idx];
      const Plane<int32_t>& lh = sb.bands[idx + 1];
      const Plane<int32_t>& hh = sb.bands[idx + 2];
      const size_t wl = cur.width, wh = hl.width;
      const size_t top = cur.height, bottom = lh.height;
      Check(lh.width == wl && hh.width == wh && hl.height == top && hh.height == bottom &&
                (wl == wh || wl == wh + 1) && (top == bottom || top == bottom + 1),
            ErrorCode::kInvalidArgument, "two-way stage does not fit");
      const size_t h = top + bottom;
      auto merge_columns = [&](const Plane<int32_t>& t, const Plane<int32_t>& b,
                               Plane<int32_t>& dst) {
        std::vector<int32_t> tc(top), bc(bottom);
        for (size_t x = 0; x < dst.width; ++x) {
          for (size_t y = 0; y < top; ++y) tc[y] = t.at(x, y);
          for (size_t y = 0; y < bottom; ++y) bc[y] = b.at(x, y);
          dwt_detail::Inverse(tc.data(), bc.data(), h, dst.data.data() + x, dst.width);
        }
      };
      Plane<int32_t> lo(wl, h), hi(wh, h);
      merge_columns(cur, lh, lo);
      merge_columns(hl, hh, hi);
      Plane<int32_t> next(wl + wh, h);
      for (size_t y = 0; y < h; ++y) {
        dwt_detail::Inverse(lo.row(y).data(), wh ? hi.row(y).data() : nullptr, wl + wh,
                            next.row(y).data(), 1);
      }
      cur = std::move(next);
      idx += 3;
    }
  }
  return cur;
}

}  // namespace tlxs

#endif  // TLXS_WAVELET_HPP_
