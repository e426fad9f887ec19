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

// tlxs: command-line front end for the two-layer codec.
//
// Exit codes: 0 success, 1 runtime error (codec or I/O), 2 usage error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "tlxs/tlxs.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Usage problems found after CLI11 has accepted the command line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int ResolveThreads(int requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

tlxs::LosslessCoderId CoderFromFlag(const std::string& name) {
  const auto id = tlxs::ParseCoderName(name);
  if (!id) throw UsageError("unknown coder '" + name + "' (expected predictive or wavelet)");
  return *id;
}

struct EncodeArgs {
  std::string input;
  std::string output;
  std::optional<double> bpp;
  bool no_base = false;
  bool lossless_base = false;
  std::string coder = "predictive";
  int levels_h = 5;
  int levels_v = 2;
  int threads = 0;
};

int RunEncode(const EncodeArgs& a) {
  std::optional<tlxs::BaseConfig> config;
  if (!a.no_base) {
    tlxs::BaseConfig c;
    c.levels_h = a.levels_h;
    c.levels_v = a.levels_v;
    c.target_bpp = a.lossless_base ? tlxs::BaseConfig::kLosslessBase : a.bpp.value_or(2.0);
    try {
      c.Validate();
    } catch (const tlxs::Error& e) {
      throw UsageError(e.what());
    }
    config = c;
  }
  const auto coder = CoderFromFlag(a.coder);
  const auto image = tlxs::LoadPnm(a.input);
  const auto enc = tlxs::EncodeTwoLayerDetailed(image, config, coder, ResolveThreads(a.threads));
  tlxs::WriteFileBytes(a.output, enc.file);

  const size_t w = image.width(), h = image.height();
  std::printf("base_bpp=%s ext_bpp=%s total_bpp=%s\n",
              tlxs::FormatFixed4(tlxs::BitsPerPixel(enc.base_bytes, w, h)).c_str(),
              tlxs::FormatFixed4(tlxs::BitsPerPixel(enc.extension_bytes, w, h)).c_str(),
              tlxs::FormatFixed4(tlxs::BitsPerPixel(enc.file.size(), w, h)).c_str());
  if (enc.rate_overshoot) {
    std::fprintf(stderr, "warning: base layer exceeds the target rate at the coarsest step\n");
  }
  return kExitOk;
}

int RunDecode(const std::string& input, const std::string& output, int threads) {
  const auto file = tlxs::ReadFileBytes(input);
  const auto dec = tlxs::DecodeTwoLayer(file, ResolveThreads(threads));
  tlxs::StorePnm(dec.image, output);
  std::printf("lossless: %s\n", dec.lossless ? "true" : "false");
  return kExitOk;
}

int RunDecodeBase(const std::string& input, const std::string& output, int threads) {
  const auto file = tlxs::ReadFileBytes(input);
  tlxs::StorePnm(tlxs::DecodeBaseOnly(file, ResolveThreads(threads)), output);
  return kExitOk;
}

void PrintBaseLayer(std::span<const uint8_t> base) {
  const auto h = tlxs::ParseBaseHeader(base);
  std::printf("base: levels_h=%d levels_v=%d bands=%zu\n", h.levels_h, h.levels_v,
              h.layout.size());
  for (size_t c = 0; c < h.bands.size(); ++c) {
    for (size_t b = 0; b < h.layout.size(); ++b) {
      const auto& info = h.layout[b];
      const auto& p = h.bands[c][b];
      std::string label = tlxs::BandKindName(info.kind);
      if (info.kind != tlxs::BandKind::kLL) label += std::to_string(info.level);
      std::printf("  c%zu %s %zux%zu step=%d k=%d bits=%u\n", c, label.c_str(), info.width,
                  info.height, p.step, p.rice_k, p.coded_bits);
    }
  }
}

int RunInspect(const std::string& input) {
  const auto file = tlxs::ReadFileBytes(input);
  const auto hdr = tlxs::ParseContainerHeader(file);
  const auto& m = hdr.meta;
  std::printf("magic: %s\n", tlxs::kContainerMagic);
  std::printf("version: %u\n", hdr.version);
  std::printf("width: %u\nheight: %u\n", m.width, m.height);
  std::printf("components: %d\nbit_depth: %d\n", m.components, m.bit_depth);
  std::printf("coder: %s\n",
              m.coder ? std::string(tlxs::CoderName(*m.coder)).c_str() : "none");
  std::printf("base_length: %u\nextension_length: %u\n", hdr.base_length,
              hdr.extension_length);
  std::printf("crc32: 0x%08x\n", hdr.crc);

  const auto layers = tlxs::Demux(file);
  if (layers.base.empty()) {
    std::printf("base: absent\n");
  } else {
    PrintBaseLayer(layers.base);
  }
  if (layers.extension.empty()) {
    std::printf("extension: absent\n");
  } else {
    const auto ext = tlxs::ParseExtensionHeader(layers.extension, m.components);
    std::printf("extension: coder=%s depth=%d\n", std::string(tlxs::CoderName(ext.coder)).c_str(),
                ext.depth);
    for (size_t c = 0; c < ext.plane_bytes.size(); ++c) {
      std::printf("  c%zu bytes=%u\n", c, ext.plane_bytes[c]);
    }
  }
  return kExitOk;
}

int RunMetrics(const std::string& reference, const std::string& test,
               const std::string& container) {
  const auto a = tlxs::LoadPnm(reference);
  const auto b = tlxs::LoadPnm(test);
  std::printf("mse: %s\n", tlxs::FormatFixed4(tlxs::MeanSquaredError(a, b)).c_str());
  std::printf("psnr_db: %s\n", tlxs::FormatFixed4(tlxs::Psnr(a, b)).c_str());
  if (!container.empty()) {
    const auto bytes = tlxs::ReadFileBytes(container);
    std::printf("bpp: %s\n",
                tlxs::FormatFixed4(tlxs::BitsPerPixel(bytes.size(), a.width(), a.height())).c_str());
  }
  return kExitOk;
}

struct BenchArgs {
  std::string input;
  std::string synthetic;
  size_t width = 512;
  size_t height = 512;
  int depth = 8;
  int components = 1;
  std::vector<double> grid{0.0, 0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<std::string> coders{"predictive", "wavelet"};
  int levels_h = 5;
  int levels_v = 2;
  std::string out;
  int threads = 0;
};

int RunBench(const BenchArgs& a) {
  if (a.input.empty() == a.synthetic.empty()) {
    throw UsageError("bench needs exactly one of --input or --synthetic");
  }
  if (std::find(a.grid.begin(), a.grid.end(), 0.0) == a.grid.end()) {
    throw UsageError("--grid must include 0");
  }
  for (double g : a.grid) {
    if (!(g >= 0) || !std::isfinite(g)) throw UsageError("--grid points must be >= 0");
  }
  std::vector<tlxs::LosslessCoderId> coders;
  for (const auto& name : a.coders) coders.push_back(CoderFromFlag(name));
  tlxs::BaseConfig base;
  base.levels_h = a.levels_h;
  base.levels_v = a.levels_v;
  try {
    base.Validate();
  } catch (const tlxs::Error& e) {
    throw UsageError(e.what());
  }

  tlxs::PlanarImage image;
  if (!a.input.empty()) {
    image = tlxs::LoadPnm(a.input);
  } else {
    const auto kind = tlxs::ParseSyntheticName(a.synthetic);
    if (!kind) throw UsageError("unknown synthetic image '" + a.synthetic + "'");
    image = tlxs::MakeSynthetic(*kind, a.width, a.height, a.depth, a.components);
  }
  const auto rows = tlxs::BenchSweep(image, a.grid, coders, base, ResolveThreads(a.threads));
  const std::string csv = tlxs::FormatBenchCsv(rows);
  const std::vector<uint8_t> bytes(csv.begin(), csv.end());
  tlxs::WriteFileBytes(a.out, bytes);
  std::printf("wrote %zu rows to %s\n", rows.size(), a.out.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-layer lossless image codec with a wavelet base layer"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "Encode a PNM image into a layered file");
  encode->add_option("--input", enc.input, "Source PGM/PPM")->required();
  encode->add_option("--output", enc.output, "Destination file")->required();
  auto* bpp = encode->add_option("--bpp", enc.bpp, "Base layer target in bits per pixel")
                  ->check(CLI::PositiveNumber);
  auto* no_base = encode->add_flag("--no-base", enc.no_base, "Skip the base layer");
  auto* lossless_base =
      encode->add_flag("--lossless-base", enc.lossless_base, "Code the base at step 1");
  bpp->excludes(no_base)->excludes(lossless_base);
  no_base->excludes(lossless_base);
  encode->add_option("--coder", enc.coder, "Lossless coder: predictive or wavelet");
  auto* lh = encode->add_option("--levels-h", enc.levels_h, "Horizontal decomposition levels");
  auto* lv = encode->add_option("--levels-v", enc.levels_v, "Vertical decomposition levels");
  no_base->excludes(lh)->excludes(lv);

  std::string input, output;
  auto* decode = app.add_subcommand("decode", "Reconstruct the original image");
  decode->add_option("--input", input, "Layered file")->required();
  decode->add_option("--output", output, "Destination PNM")->required();
  auto* decode_base = app.add_subcommand("decode-base", "Reconstruct the base layer only");
  decode_base->add_option("--input", input, "Layered file")->required();
  decode_base->add_option("--output", output, "Destination PNM")->required();

  auto* inspect = app.add_subcommand("inspect", "Print header fields without decoding");
  inspect->add_option("file", input, "Layered file")->required();

  std::string reference, test, container;
  auto* metrics = app.add_subcommand("metrics", "Compare two images");
  metrics->add_option("--reference", reference, "Reference PNM")->required();
  metrics->add_option("--test", test, "Test PNM")->required();
  metrics->add_option("--container", container, "Layered file for a bpp figure");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Rate-distortion sweep to CSV");
  bench->add_option("--input", bench_args.input, "Source PNM");
  bench->add_option("--synthetic", bench_args.synthetic,
                    "Synthetic image: gradient, noise, text, constant, checkerboard, natural");
  bench->add_option("--width", bench_args.width, "Synthetic width");
  bench->add_option("--height", bench_args.height, "Synthetic height");
  bench->add_option("--depth", bench_args.depth, "Synthetic bit depth");
  bench->add_option("--components", bench_args.components, "Synthetic component count");
  bench->add_option("--grid", bench_args.grid, "Comma-separated base targets (must include 0)")
      ->delimiter(',');
  bench->add_option("--coders", bench_args.coders, "Comma-separated coder names")
      ->delimiter(',');
  bench->add_option("--levels-h", bench_args.levels_h, "Horizontal decomposition levels");
  bench->add_option("--levels-v", bench_args.levels_v, "Vertical decomposition levels");
  bench->add_option("--out", bench_args.out, "CSV destination")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*encode) {
      enc.threads = threads;
      return RunEncode(enc);
    }
    if (*decode) return RunDecode(input, output, threads);
    if (*decode_base) return RunDecodeBase(input, output, threads);
    if (*inspect) return RunInspect(input);
    if (*metrics) return RunMetrics(reference, test, container);
    bench_args.threads = threads;
    return RunBench(bench_args);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "tlxs: %s\n", e.what());
    return kExitUsage;
  } catch (const tlxs::Error& e) {
    if (e.code() == tlxs::ErrorCode::kMissingBaseLayer) {
      std::fprintf(stderr, "tlxs: no base layer in file\n");
    } else {
      std::fprintf(stderr, "tlxs: %s\n", e.what());
    }
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "tlxs: %s\n", e.what());
    return kExitRuntime;
  }
}
