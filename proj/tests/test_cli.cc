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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "test_util.hpp"
#include "tlxs/tlxs.hpp"

namespace tlxs {
namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;  // stdout and stderr interleaved
};

RunResult RunCli(const std::string& args) {
  const std::string cmd = std::string(TLXS_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 512> buf{};
  while (fgets(buf.data(), buf.size(), pipe) != nullptr) r.out += buf.data();
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto camera = LoadPnm(std::string(TLXS_DATA_DIR) + "/camera.pgm");
    source_ = Crop(camera, 96, 64);
    StorePnm(source_, input_);
  }

  testing::TempDir dir_{"cli"};
  const std::string input_ = dir_.File("in.pgm");
  PlanarImage source_;
};

TEST_F(CliTest, EncodeDecodeRoundTrip) {
  const auto file = dir_.File("a.tlxs");
  const auto enc = RunCli("encode --input " + input_ + " --output " + file + " --bpp 2.0");
  ASSERT_EQ(enc.exit_code, 0) << enc.out;
  EXPECT_NE(enc.out.find("base_bpp="), std::string::npos);
  EXPECT_NE(enc.out.find("total_bpp="), std::string::npos);

  const auto out = dir_.File("out.pgm");
  const auto dec = RunCli("decode --input " + file + " --output " + out);
  ASSERT_EQ(dec.exit_code, 0) << dec.out;
  EXPECT_NE(dec.out.find("lossless: true"), std::string::npos);
  EXPECT_EQ(LoadPnm(out), source_);

  const auto base_out = dir_.File("base.pgm");
  ASSERT_EQ(RunCli("decode-base --input " + file + " --output " + base_out).exit_code, 0);
  EXPECT_EQ(LoadPnm(base_out), DecodeBaseOnly(ReadFileBytes(file)));
}

TEST_F(CliTest, DefaultsAndCoderChoice) {
  const auto file = dir_.File("d.tlxs");
  ASSERT_EQ(RunCli("encode --input " + input_ + " --output " + file).exit_code, 0);
  const auto hdr = ParseContainerHeader(ReadFileBytes(file));
  EXPECT_EQ(hdr.meta.coder, LosslessCoderId::kPredictive);
  EXPECT_EQ(ParseBaseHeader(Demux(ReadFileBytes(file)).base).levels_h, 5);
  EXPECT_EQ(ParseBaseHeader(Demux(ReadFileBytes(file)).base).levels_v, 2);

  ASSERT_EQ(RunCli("encode --input " + input_ + " --output " + file +
                " --coder wavelet --levels-h 3 --levels-v 1 --lossless-base")
                .exit_code,
            0);
  const auto layers = Demux(ReadFileBytes(file));
  EXPECT_EQ(layers.meta.coder, LosslessCoderId::kWavelet);
  EXPECT_EQ(ParseBaseHeader(layers.base).levels_h, 3);
  EXPECT_EQ(DecodeBase(layers.base), source_);
}

TEST_F(CliTest, NoBaseWritesZeroBaseLength) {
  const auto file = dir_.File("nb.tlxs");
  ASSERT_EQ(RunCli("encode --input " + input_ + " --output " + file + " --no-base").exit_code, 0);
  const auto bytes = ReadFileBytes(file);
  EXPECT_EQ(ParseContainerHeader(bytes).base_length, 0u);

  const auto r = RunCli("decode-base --input " + file + " --output " + dir_.File("x.pgm"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("no base layer"), std::string::npos);

  const auto dec = RunCli("decode --input " + file + " --output " + dir_.File("y.pgm"));
  EXPECT_EQ(dec.exit_code, 0);
  EXPECT_NE(dec.out.find("lossless: true"), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  const auto file = dir_.File("u.tlxs");
  EXPECT_EQ(RunCli("encode --input " + input_ + " --output " + file + " --bpp 1 --no-base").exit_code,
            2);
  EXPECT_EQ(RunCli("encode --input " + input_ + " --output " + file + " --bpp 1 --lossless-base")
                .exit_code,
            2);
  EXPECT_EQ(RunCli("encode --input " + input_).exit_code, 2);
  EXPECT_EQ(RunCli("encode --input " + input_ + " --output " + file + " --coder jpeg").exit_code, 2);
  EXPECT_EQ(RunCli("encode --input " + input_ + " --output " + file + " --levels-h 9").exit_code, 2);
  EXPECT_EQ(RunCli("encode --input " + input_ + " --output " + file + " --bpp -1").exit_code, 2);
  EXPECT_EQ(RunCli("frobnicate").exit_code, 2);
  EXPECT_EQ(RunCli("").exit_code, 2);
  EXPECT_EQ(RunCli("--help").exit_code, 0);
  EXPECT_FALSE(std::filesystem::exists(file));
}

TEST_F(CliTest, RuntimeErrorsExitOne) {
  const auto r = RunCli("encode --input " + dir_.File("missing.pgm") + " --output " +
                     dir_.File("m.tlxs"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_FALSE(r.out.empty());

  const auto junk = dir_.File("junk.tlxs");
  const std::vector<uint8_t> bytes(64, 0x42);
  WriteFileBytes(junk, bytes);
  EXPECT_EQ(RunCli("decode --input " + junk + " --output " + dir_.File("j.pgm")).exit_code, 1);
  const auto inspect = RunCli("inspect " + junk);
  EXPECT_EQ(inspect.exit_code, 1);
  EXPECT_NE(inspect.out.find("magic"), std::string::npos);
}

TEST_F(CliTest, InspectEchoesHeader) {
  const auto file = dir_.File("i.tlxs");
  ASSERT_EQ(RunCli("encode --input " + input_ + " --output " + file + " --bpp 1").exit_code, 0);
  const auto before = ReadFileBytes(file);
  const auto r = RunCli("inspect " + file);
  ASSERT_EQ(r.exit_code, 0) << r.out;
  const auto hdr = ParseContainerHeader(before);
  for (const std::string& field : std::vector<std::string>{"magic: TLXS", "version: 1", "width: 96", "height: 64", "components: 1", "bit_depth: 8",
        "coder: predictive", "base_length: " + std::to_string(hdr.base_length),
        "extension_length: " + std::to_string(hdr.extension_length), "crc32: 0x",
        "base: levels_h=5 levels_v=2", "c0 LL 3x16", "c0 H5 3x16", "c0 HH1 48x32", "extension: coder=predictive depth=9"}) {
    EXPECT_NE(r.out.find(field), std::string::npos) << field << "\n" << r.out;
  }
  EXPECT_EQ(ReadFileBytes(file), before);
}

TEST_F(CliTest, InspectBaseOnlyFile) {
  BaseConfig c;
  c.target_bpp = 1.0;
  const auto base = EncodeBase(source_, c);
  const auto file = dir_.File("bo.tlxs");
  WriteFileBytes(file, Mux(base.bytes, {}, ContainerMeta{96, 64, 1, 8, std::nullopt}));
  const auto r = RunCli("inspect " + file);
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_NE(r.out.find("extension: absent"), std::string::npos);
  EXPECT_NE(r.out.find("coder: none"), std::string::npos);
  const auto dec = RunCli("decode --input " + file + " --output " + dir_.File("bo.pgm"));
  EXPECT_EQ(dec.exit_code, 0);
  EXPECT_NE(dec.out.find("lossless: false"), std::string::npos);
}

TEST_F(CliTest, Metrics) {
  const auto r = RunCli("metrics --reference " + input_ + " --test " + input_);
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("mse: 0.0000"), std::string::npos);
  EXPECT_NE(r.out.find("psnr_db: inf"), std::string::npos);
  const auto other = dir_.File("other.pgm");
  StorePnm(Crop(source_, 32, 32), other);
  EXPECT_EQ(RunCli("metrics --reference " + input_ + " --test " + other).exit_code, 1);
}

TEST_F(CliTest, BenchRowsAndDeterminism) {
  const auto csv1 = dir_.File("b1.csv");
  const auto csv2 = dir_.File("b2.csv");
  const std::string args = "bench --input " + input_ + " --grid 0,1,2 --coders predictive,wavelet";
  ASSERT_EQ(RunCli(args + " --out " + csv1).exit_code, 0);
  ASSERT_EQ(RunCli("--threads 3 " + args + " --out " + csv2).exit_code, 0);
  const auto a = ReadFileBytes(csv1);
  EXPECT_EQ(a, ReadFileBytes(csv2));
  const std::string text(a.begin(), a.end());
  EXPECT_EQ(text.rfind(kBenchCsvHeader, 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 7);
  EXPECT_EQ(text.find(",false"), std::string::npos);

  EXPECT_EQ(RunCli("bench --input " + input_ + " --grid 1,2 --out " + csv1).exit_code, 2);
  EXPECT_EQ(RunCli("bench --grid 0 --out " + csv1).exit_code, 2);
  EXPECT_EQ(RunCli("bench --synthetic text --width 40 --height 24 --depth 10 --grid 0,1 --coders "
                "wavelet --out " +
                csv1)
                .exit_code,
            0);
}

}  // namespace
}  // namespace tlxs
