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

// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Extra arguments are PNM files that join
// the losslessness corpus.
//
//   acceptance [image.pgm ...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "tlxs/tlxs.hpp"

namespace {

using namespace tlxs;

// Pinned tolerances.
constexpr size_t kCorpusSide = 256;
constexpr double kCorpusSeconds = 60.0;
constexpr int kCorpusDepths[] = {8, 10, 12};
constexpr double kCorpusGrid[] = {0.0, 0.5, 1.0, 2.0, 4.0};
constexpr int kResidualTrials = 400;
constexpr int kMinExtensionMutations = 1000;
constexpr double kRdGrid[] = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
constexpr double kBenchGrid[] = {0.0, 0.25, 0.5, 1.0, 2.0, 4.0};
constexpr double kAnchorMaxBpp = 13.57 * 1.15;  // 15.6055
constexpr double kAnchorSeconds = 5.0;
constexpr int kOracleLines = 10000;
constexpr int kOraclePlanes = 500;
constexpr uint32_t kRiceMaxValue = 1023;
constexpr int kRiceMaxK = 10;
constexpr int32_t kQuantRange = 1024;
constexpr int32_t kQuantMaxStep = 16;
constexpr int kThreadCounts[] = {1, 2, 3, 8};

constexpr LosslessCoderId kCoders[] = {LosslessCoderId::kPredictive, LosslessCoderId::kWavelet};

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string Fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

const PlanarImage& Camera() {
  static const PlanarImage img = LoadPnm(std::string(TLXS_DATA_DIR) + "/camera.pgm");
  return img;
}

struct CorpusEntry {
  std::string name;
  PlanarImage image;
};

std::vector<CorpusEntry> BuildCorpus(const std::vector<std::string>& user_files) {
  std::vector<CorpusEntry> base;
  for (auto kind : kAllSyntheticKinds) {
    base.push_back({std::string(SyntheticName(kind)),
                    MakeSynthetic(kind, kCorpusSide, kCorpusSide, 8)});
  }
  base.push_back({"camera", Crop(Camera(), kCorpusSide, kCorpusSide)});
  base.push_back({"astronaut", LoadPnm(std::string(TLXS_DATA_DIR) + "/astronaut_256.ppm")});
  for (const auto& path : user_files) base.push_back({path, LoadPnm(path)});

  std::vector<CorpusEntry> out;
  for (const auto& e : base) {
    for (int n : kCorpusDepths) {
      out.push_back({e.name + "@" + std::to_string(n), ChangeBitDepth(e.image, n)});
    }
  }
  return out;
}

// Two-layer files produced by criterion 1, reused by criterion 3.
struct TwoLayerSample {
  std::string label;
  std::vector<uint8_t> file;
  size_t extension_begin = 0;
  PlanarImage base_reconstruction;
};

Outcome Losslessness(const std::vector<CorpusEntry>& corpus, int threads,
                     std::vector<TwoLayerSample>& samples) {
  const auto start = std::chrono::steady_clock::now();
  size_t runs = 0;
  std::string first_failure;
  for (const auto& e : corpus) {
    for (double bpp : kCorpusGrid) {
      std::optional<BaseConfig> cfg;
      if (bpp > 0) {
        cfg = BaseConfig{};
        cfg->target_bpp = bpp;
      }
      for (auto coder : kCoders) {
        ++runs;
        const std::string label =
            e.name + " bpp=" + Fmt("%g", bpp) + " " + std::string(CoderName(coder));
        try {
          auto enc = EncodeTwoLayerDetailed(e.image, cfg, coder, threads);
          const auto dec = DecodeTwoLayer(enc.file, threads);
          if (!(dec.lossless && dec.image == e.image) && first_failure.empty()) {
            first_failure = label;
          }
          if (enc.base_bytes > 0 && enc.extension_bytes > 0) {
            samples.push_back({label, std::move(enc.file),
                               kContainerHeaderSize + enc.base_bytes,
                               std::move(enc.base_reconstruction)});
          }
        } catch (const std::exception& ex) {
          if (first_failure.empty()) first_failure = label + ": " + ex.what();
        }
      }
    }
  }
  const double secs = Seconds(start);
  Outcome o;
  o.pass = first_failure.empty() && secs < kCorpusSeconds;
  o.detail = std::to_string(runs) + " encodes over " + std::to_string(corpus.size()) +
             " images, " + Fmt("%.1f s", secs) + " (limit " + Fmt("%.0f s", kCorpusSeconds) +
             ")";
  if (!first_failure.empty()) o.detail += ", first mismatch: " + first_failure;
  return o;
}

Outcome ShiftRange() {
  std::mt19937 rng(2024);
  int64_t checked = 0;
  int reached_top = 0, reached_bottom = 0;
  for (int trial = 0; trial < kResidualTrials; ++trial) {
    const int n = kMinBitDepth + trial % (kMaxBitDepth - kMinBitDepth + 1);
    const uint32_t max = MaxSample(n);
    const size_t w = 1 + rng() % 48, h = 1 + rng() % 48;
    // Mix of extreme pairs and uniform samples.
    std::vector<Plane<uint16_t>> orig(1, Plane<uint16_t>(w, h)), base(1, Plane<uint16_t>(w, h));
    for (size_t i = 0; i < w * h; ++i) {
      const uint32_t mode = rng() % 4;
      const uint32_t u = rng() % (max + 1), v = rng() % (max + 1);
      orig[0].data[i] = static_cast<uint16_t>(mode == 0 ? max : mode == 1 ? 0 : u);
      base[0].data[i] = static_cast<uint16_t>(mode == 0 ? 0 : mode == 1 ? max : v);
    }
    const auto p = PlanarImage::Create(n, std::move(orig));
    const auto pp = PlanarImage::Create(n, std::move(base));
    const auto r = ComputeResidual(p, pp)[0];
    const auto s = DcShift(r, n);
    const int64_t top = (int64_t{1} << (n + 1)) - 2;
    for (int32_t v : s.samples.data) {
      if (v < 0 || v > top) {
        return {false, "sample " + std::to_string(v) + " outside [0, " + std::to_string(top) +
                           "] at N=" + std::to_string(n)};
      }
      reached_top += v == top;
      reached_bottom += v == 0;
      ++checked;
    }
    if (DcUnshift(s, n) != r) return {false, "unshift mismatch at N=" + std::to_string(n)};
  }
  const bool extremes_hit = reached_top > 0 && reached_bottom > 0;
  return {extremes_hit, std::to_string(checked) + " shifted samples, N=8..16, both bounds " +
                            (extremes_hit ? "attained" : "NOT attained")};
}

Outcome BaseCompatibility(const std::vector<TwoLayerSample>& samples, int threads) {
  std::string failure;
  for (const auto& s : samples) {
    if (DecodeBaseOnly(s.file, threads) != s.base_reconstruction) {
      failure = "base decode differs from encoder P' for " + s.label;
      break;
    }
  }
  std::mt19937 rng(77);
  int mutations = 0;
  // Spread at least the minimum across all files, a couple per file.
  const int per_file =
      std::max<int>(2, (kMinExtensionMutations + static_cast<int>(samples.size()) - 1) /
                           std::max<int>(1, static_cast<int>(samples.size())));
  for (const auto& s : samples) {
    if (!failure.empty()) break;
    const size_t ext_len = s.file.size() - s.extension_begin;
    for (int m = 0; m < per_file; ++m) {
      auto bad = s.file;
      const int flips = 1 + static_cast<int>(rng() % 4);
      for (int f = 0; f < flips; ++f) {
        bad[s.extension_begin + rng() % ext_len] ^= static_cast<uint8_t>(1 + rng() % 255);
      }
      ++mutations;
      try {
        if (DecodeBaseOnly(bad, threads) != s.base_reconstruction) {
          failure = "extension corruption changed base output for " + s.label;
          break;
        }
      } catch (const std::exception& ex) {
        failure = "extension corruption broke base decode for " + s.label + ": " + ex.what();
        break;
      }
    }
  }
  Outcome o;
  o.pass = failure.empty() && mutations >= kMinExtensionMutations && !samples.empty();
  o.detail = std::to_string(samples.size()) + " files matched P', " + std::to_string(mutations) +
             " extension mutations";
  if (!failure.empty()) o.detail += "; " + failure;
  return o;
}

Outcome RdShape(int threads) {
  std::vector<double> psnr;
  for (double bpp : kRdGrid) {
    BaseConfig c;
    c.target_bpp = bpp;
    const auto base = EncodeBase(Camera(), c, threads);
    psnr.push_back(Psnr(Camera(), DecodeBase(base.bytes, threads)));
  }
  bool monotone = true;
  for (size_t i = 1; i < psnr.size(); ++i) monotone = monotone && psnr[i] >= psnr[i - 1];
  const double low_gain = psnr[1] - psnr[0];
  const double high_gain = psnr[5] - psnr[4];
  const bool saturating = high_gain < low_gain;
  std::ostringstream d;
  d << "camera PSNR";
  for (size_t i = 0; i < psnr.size(); ++i) {
    d << " " << Fmt("%g", kRdGrid[i]) << ":" << FormatFixed4(psnr[i]);
  }
  d << "; monotone=" << (monotone ? "yes" : "no") << ", gain 4->8 " << FormatFixed4(high_gain)
    << " dB vs 0.25->0.5 " << FormatFixed4(low_gain) << " dB";
  if (std::isinf(psnr[5])) d << " (base reaches step 1, which is lossless)";
  return {monotone && saturating, d.str()};
}

Outcome TotalRate(int threads) {
  const auto& img = Camera();
  const auto rows = BenchSweep(img, kBenchGrid, kCoders, BaseConfig{}, threads);
  std::ostringstream d;
  bool pass = true;
  const size_t per_coder = std::size(kBenchGrid);
  for (size_t c = 0; c < std::size(kCoders); ++c) {
    const auto& zero = rows[c * per_coder];
    const auto alone = EncodeExtension(ToSignedPlanes(img), img.bit_depth(), kCoders[c], threads);
    const size_t expected = alone.size() + kContainerHeaderSize;
    const bool exact = zero.target_bpp == 0.0 && zero.total_bytes == expected &&
                       zero.total_bpp == BitsPerPixel(expected, img.width(), img.height());
    pass = pass && exact;
    d << CoderName(kCoders[c]) << ": grid0 " << FormatFixed4(zero.total_bpp)
      << (exact ? " (= coder + header)" : " (!= coder + header)") << ", totals";
    for (size_t i = 1; i < per_coder; ++i) {
      const auto& r = rows[c * per_coder + i];
      pass = pass && r.total_bpp > zero.total_bpp && r.lossless;
      d << " " << FormatFixed4(r.total_bpp);
    }
    if (c + 1 < std::size(kCoders)) d << "; ";
  }
  return {pass, d.str()};
}

Outcome Anchor() {
  const auto& img = Camera();
  const auto start = std::chrono::steady_clock::now();
  const auto plane = ToSignedPlanes(img)[0];
  const auto bytes = EncodePlaneLossless(plane, img.bit_depth(), LosslessCoderId::kPredictive);
  const double secs = Seconds(start);
  const bool exact =
      DecodePlaneLossless(bytes, img.width(), img.height(), img.bit_depth(),
                          LosslessCoderId::kPredictive) == plane;
  const double bpp = BitsPerPixel(bytes.size(), img.width(), img.height());
  return {exact && bpp <= kAnchorMaxBpp && secs < kAnchorSeconds,
          "predictive coder on camera 512x512: " + FormatFixed4(bpp) + " bpp (limit " +
              FormatFixed4(kAnchorMaxBpp) + "), " + Fmt("%.3f s", secs) +
              (exact ? "" : ", NOT lossless")};
}

std::string UnsignedRiceString(uint32_t z, int k) {
  std::string s(z >> k, '1');
  s += '0';
  for (int i = k - 1; i >= 0; --i) s += ((z >> i) & 1) ? '1' : '0';
  return s;
}

Outcome Oracles() {
  std::mt19937 rng(4242);
  std::vector<std::string> failures;

  // Lifting lines.
  for (int t = 0; t < kOracleLines && failures.empty(); ++t) {
    const size_t n = 1 + rng() % 64;
    std::vector<int32_t> x(n);
    for (auto& v : x) v = static_cast<int32_t>(rng() % 131072) - 65536;
    std::vector<int32_t> low, high;
    oracle::Dwt53(x, low, high);
    const auto split = Dwt53Forward(x);
    if (split.low != low || split.high != high) failures.push_back("5/3 forward vs oracle");
    if (Dwt53Inverse(split.low, split.high) != x) failures.push_back("5/3 line round trip");
  }

  // Planes, every other one forced to odd dimensions.
  for (int t = 0; t < kOraclePlanes && failures.empty(); ++t) {
    size_t w = 1 + rng() % 48, h = 1 + rng() % 48;
    if (t % 2 == 0) {
      w |= 1;
      h |= 1;
    }
    const int lh = static_cast<int>(rng() % 7);
    const int lv = lh == 0 ? 0 : static_cast<int>(rng() % (std::min(lh, 2) + 1));
    Plane<int32_t> p(w, h);
    for (auto& v : p.data) v = static_cast<int32_t>(rng() % 65536) - 32768;
    if (Recompose(Decompose(p, lh, lv)) != p) failures.push_back("5/3 plane round trip");
  }

  // Golomb-Rice.
  for (int k = 0; k <= kRiceMaxK && failures.empty(); ++k) {
    for (uint32_t z = 0; z <= kRiceMaxValue; ++z) {
      BitWriter w;
      PutRice(w, z, k);
      const size_t bits = w.bit_count();
      std::vector<uint8_t> bytes = std::move(w).Take();
      BitReader r(bytes, bits);
      if (oracle::BitsToString(bytes, bits) != UnsignedRiceString(z, k) || GetRice(r, k) != z ||
          r.remaining() != 0) {
        failures.push_back("Golomb-Rice z=" + std::to_string(z) + " k=" + std::to_string(k));
        break;
      }
    }
  }

  // MED.
  for (int32_t a = 0; a <= 15; ++a) {
    for (int32_t b = 0; b <= 15; ++b) {
      for (int32_t c = 0; c <= 15; ++c) {
        const int32_t m = MedPredict(a, b, c);
        if (m != oracle::MedBranches(a, b, c) || m != oracle::Median3(a, b, a + b - c)) {
          failures.push_back("MED");
        }
      }
    }
  }

  // Quantizer: error below one step everywhere, at most half a step outside the dead zone.
  for (int32_t s = 1; s <= kQuantMaxStep; ++s) {
    for (int32_t c = -kQuantRange; c <= kQuantRange; ++c) {
      const int32_t q = QuantizeDeadzone(c, s);
      const int32_t r = DequantizeDeadzone(q, s);
      const int32_t err = std::abs(r - c);
      const bool ok = err < s && (std::abs(c) < s ? r == 0 : 2 * err <= s) &&
                      (r == 0 || (r > 0) == (c > 0));
      if (!ok) {
        failures.push_back("quantizer c=" + std::to_string(c) + " s=" + std::to_string(s));
        s = kQuantMaxStep + 1;
        break;
      }
    }
  }

  const std::string scope = std::to_string(kOracleLines) + " lines, " +
                            std::to_string(kOraclePlanes) + " planes, GR 0..1023 x k0..10, " +
                            "MED 16^3, quantizer [-1024,1024] x 1..16";
  if (failures.empty()) return {true, scope + ", 0 failures"};
  return {false, scope + ", first failure: " + failures.front()};
}

Outcome Determinism() {
  std::vector<PlanarImage> images = {
      Crop(Camera(), 200, 136),
      MakeSynthetic(SyntheticKind::kNatural, 160, 96, 12, 3),
      MakeSynthetic(SyntheticKind::kText, 75, 61, 10),
  };
  std::vector<std::optional<BaseConfig>> configs = {std::nullopt};
  for (double bpp : {0.5, 2.0, BaseConfig::kLosslessBase}) {
    BaseConfig c;
    c.target_bpp = bpp;
    configs.push_back(c);
  }
  int comparisons = 0;
  for (const auto& img : images) {
    for (const auto& cfg : configs) {
      for (auto coder : kCoders) {
        const auto reference = EncodeTwoLayer(img, cfg, coder, 1);
        for (int t : kThreadCounts) {
          for (int rep = 0; rep < 2; ++rep) {
            ++comparisons;
            if (EncodeTwoLayer(img, cfg, coder, t) != reference) {
              return {false, "container differs at " + std::to_string(t) + " threads"};
            }
          }
        }
      }
    }
  }
  const double grid[] = {0.0, 1.0, 2.0};
  const auto small = Crop(Camera(), 128, 128);
  const auto csv = FormatBenchCsv(BenchSweep(small, grid, kCoders, BaseConfig{}, 1));
  for (int t : kThreadCounts) {
    ++comparisons;
    if (FormatBenchCsv(BenchSweep(small, grid, kCoders, BaseConfig{}, t)) != csv) {
      return {false, "bench CSV differs at " + std::to_string(t) + " threads"};
    }
  }
  return {true, std::to_string(comparisons) + " repeated encodes byte-identical across 1/2/3/8 threads"};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> user_files(argv + 1, argv + argc);
  const int threads = std::max(1u, std::thread::hardware_concurrency());

  std::vector<TwoLayerSample> samples;
  std::vector<CorpusEntry> corpus;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"universal losslessness",
       [&] {
         corpus = BuildCorpus(user_files);
         return Losslessness(corpus, threads, samples);
       }},
      {"N+1-bit residual range", ShiftRange},
      {"base-only compatibility", [&] { return BaseCompatibility(samples, threads); }},
      {"base PSNR saturation", [&] { return RdShape(threads); }},
      {"total rate accounting", [&] { return TotalRate(threads); }},
      {"predictive coder anchor", Anchor},
      {"oracle equivalence", Oracles},
      {"determinism", Determinism},
  };

  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
