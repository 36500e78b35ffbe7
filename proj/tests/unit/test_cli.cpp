// Copyright 2026 The mpseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "mpseg/cli/commands.hpp"
#include "mpseg/cli/config.hpp"
#include "mpseg/cli/raster_io.hpp"
#include "mpseg/cli/scenes.hpp"

namespace fs = std::filesystem;

namespace mpseg::cli {
namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("mpseg_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

int run_tool(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(MPSEG_BINARY) + " " + args + " >" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(KeyValues, ParsesCommentsAndWhitespace) {
  const KeyValues kv = parse_key_values("# header\n k = 3 \nlambda=0.5\n\n  # indented\n", "test");
  EXPECT_EQ(kv.at("k"), "3");
  EXPECT_EQ(kv.at("lambda"), "0.5");
  EXPECT_EQ(kv.size(), 2u);
  EXPECT_THROW((void)parse_key_values("no equals sign\n", "test"), UsageError);
}

TEST(KeyValues, MergeLetsTopWinAndSwapsCountMode) {
  const KeyValues merged = merge_key_values({{"k", "3"}, {"lambda", "1"}}, {{"estimate_omega", "0.1"}});
  EXPECT_EQ(merged.count("k"), 0u);
  EXPECT_EQ(merged.at("estimate_omega"), "0.1");
  EXPECT_EQ(merged.at("lambda"), "1");
  const KeyValues back = merge_key_values(merged, {{"k", "4"}});
  EXPECT_EQ(back.count("estimate_omega"), 0u);
}

TEST(KeyValues, NumbersRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 25.0, 1e-3, -0.7853981633974483}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
}

TEST(SegmentConfig, DefaultsPerFeatureKind) {
  const SegmentRunConfig fft = resolve_segment_config({{"input", "a.png"}, {"out", "o"}, {"k", "2"}});
  EXPECT_EQ(fft.features, FeatureChoice::kFftModulus);
  EXPECT_EQ(fft.lambda, 25.0);
  EXPECT_EQ(fft.s, (std::vector<int>{15}));

  const SegmentRunConfig hist =
      resolve_segment_config({{"input", "a.png"}, {"out", "o"}, {"k", "5"}, {"features", "spectral-hist"}});
  EXPECT_EQ(hist.lambda, 0.005);
  EXPECT_EQ(hist.delta, 0.25);
  EXPECT_EQ(hist.s, (std::vector<int>{15, 30}));
  EXPECT_EQ(hist.weights, (std::vector<double>{0.8, 0.2}));
  EXPECT_EQ(hist.to_segmentation_config().features.bank.filters.size(), 13u);
}

TEST(SegmentConfig, ErrorsNameTheKey) {
  auto message = [](const KeyValues& kv) {
    try {
      (void)resolve_segment_config(kv);
    } catch (const UsageError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_EQ(message({{"input", "a"}, {"out", "o"}}).rfind("k:", 0), 0u);
  EXPECT_EQ(message({{"input", "a"}, {"out", "o"}, {"k", "1"}}).rfind("k:", 0), 0u);
  EXPECT_EQ(message({{"input", "a"}, {"out", "o"}, {"k", "2"}, {"lambda", "-1"}}).rfind("lambda:", 0), 0u);
  EXPECT_EQ(message({{"input", "a"}, {"out", "o"}, {"k", "2"}, {"theta", "2"}}).rfind("theta:", 0), 0u);
  EXPECT_EQ(message({{"input", "a"}, {"out", "o"}, {"k", "2"}, {"s", "5,7"}}).rfind("s:", 0), 0u);
  EXPECT_NE(message({{"input", "a"}, {"out", "o"}, {"k", "2"}, {"bogus", "1"}}).find("bogus"), std::string::npos);
}

TEST(SegmentConfig, ManifestRoundTrip) {
  const SegmentRunConfig cfg = resolve_segment_config({{"input", "img.pfm"},
                                                       {"out", "o"},
                                                       {"estimate_omega", "0.05"},
                                                       {"features", "spectral-hist"},
                                                       {"gabor_sizes", "5,9"},
                                                       {"seed", "4"}});
  const KeyValues kv = cfg.to_key_values();
  for (const auto& [key, value] : kv) {
    EXPECT_NE(std::find(segment_config_keys().begin(), segment_config_keys().end(), key), segment_config_keys().end())
        << key;
  }
  const SegmentRunConfig again = resolve_segment_config(parse_key_values(format_key_values(kv), "manifest"));
  EXPECT_EQ(again.to_key_values(), kv);
}

TEST(Raster, PfmIsLossless) {
  const fs::path dir = scratch("pfm");
  ImageGrid img(5, 3);
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 5; ++x) img.at(x, y) = 0.25 * x - 1.5 * y;
  write_image(dir / "a.pfm", img);
  const ImageGrid back = read_image(dir / "a.pfm");
  ASSERT_EQ(back.extent(), img.extent());
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 5; ++x) EXPECT_EQ(back.at(x, y), img.at(x, y));
}

TEST(Raster, PngStretchesToEightBits) {
  const fs::path dir = scratch("png");
  ImageGrid img(3, 1);
  img.at(0, 0) = -2.0;
  img.at(1, 0) = 0.0;
  img.at(2, 0) = 2.0;
  write_image(dir / "a.png", img);
  const ImageGrid back = read_image(dir / "a.png");
  EXPECT_EQ(back.at(0, 0), 0.0);
  EXPECT_NEAR(back.at(1, 0), 128.0, 1.0);
  EXPECT_EQ(back.at(2, 0), 255.0);
}

TEST(Raster, LabelMapRoundTrip) {
  const fs::path dir = scratch("labels");
  const SegMask mask{GridExtent{4, 2}, {1, 2, 3, 3, 1, 1, 2, 5}};
  write_label_map(dir / "m.png", mask);
  const SegMask back = read_mask(dir / "m.png");
  EXPECT_EQ(back.extent, mask.extent);
  EXPECT_EQ(back.labels, (std::vector<int>{1, 2, 3, 3, 1, 1, 2, 4}));
}

TEST(Raster, ReportsMissingAndMalformedFiles) {
  const fs::path dir = scratch("bad");
  EXPECT_THROW((void)read_image(dir / "missing.png"), RasterError);
  std::ofstream(dir / "junk.png") << "not a png";
  EXPECT_THROW((void)read_image(dir / "junk.png"), RasterError);
  EXPECT_THROW((void)read_image(dir / "junk.xyz"), RasterError);
}

TEST(Eval, IdenticalMasksScoreOne) {
  const SegMask m{GridExtent{4, 1}, {1, 1, 2, 2}};
  const EvalReport r = evaluate(m, m, 0.75);
  EXPECT_EQ(r.pixel_accuracy, 1.0);
  EXPECT_EQ(r.correct_segmentation, 1.0);
  EXPECT_EQ(r.boundary_deviation, 0.0);
  EXPECT_THROW((void)evaluate(m, SegMask{GridExtent{2, 2}, {1, 1, 2, 2}}, 0.75), UsageError);
  EXPECT_THROW((void)evaluate(m, m, 0.5), UsageError);
}

TEST(Scenes, ParseNames) {
  EXPECT_EQ(parse_lattice("hexagonal"), LatticeChoice::kHexagonal);
  EXPECT_EQ(parse_pattern("checkerboard"), PatternKind::kCheckerboard);
  EXPECT_THROW((void)parse_lattice("cubic"), UsageError);
  EXPECT_THROW((void)parse_pattern("plaid"), UsageError);
}

TEST(Scenes, CrystalLayoutAndDeterminism) {
  CrystalSceneOptions opt;
  opt.size = 64;
  opt.grains = 3;
  opt.noise = 0.2;
  const SynthImage a = make_crystal_scene(opt);
  const SynthImage b = make_crystal_scene(opt);
  EXPECT_EQ(a.truth.regions(), 3);
  EXPECT_TRUE(std::equal(a.image.values().begin(), a.image.values().end(), b.image.values().begin()));
}

TEST(Tool, SegmentRunsAreByteIdentical) {
  const fs::path dir = scratch("tool_segment");
  CrystalSceneOptions opt;
  opt.size = 72;
  write_synth_outputs(make_crystal_scene(opt), dir / "scene", std::cout);
  const std::string common = "segment --input " + (dir / "scene" / "image.pfm").string() + " --k 2 --s 8";
  ASSERT_EQ(run_tool(common + " --out " + (dir / "a").string(), dir / "a.log"), kExitOk) << slurp(dir / "a.log");
  ASSERT_EQ(run_tool(common + " --out " + (dir / "b").string(), dir / "b.log"), kExitOk) << slurp(dir / "b.log");
  EXPECT_EQ(slurp(dir / "a" / "labels.png"), slurp(dir / "b" / "labels.png"));
  EXPECT_TRUE(fs::exists(dir / "a" / "overlay.png"));

  const KeyValues manifest = read_key_value_file(dir / "a" / "manifest.txt");
  EXPECT_EQ(manifest.at("k"), "2");
  EXPECT_EQ(manifest.at("s"), "8");

  ASSERT_EQ(run_tool("eval --pred " + (dir / "a" / "labels.png").string() + " --truth " +
                         (dir / "scene" / "truth.png").string() + " --csv " + (dir / "eval.csv").string(),
                     dir / "eval.log"),
            kExitOk);
  EXPECT_NE(slurp(dir / "eval.csv").find("pixel_accuracy,"), std::string::npos);
}

TEST(Tool, ConfigFileWithFlagOverride) {
  const fs::path dir = scratch("tool_config");
  CrystalSceneOptions opt;
  opt.size = 48;
  write_synth_outputs(make_crystal_scene(opt), dir / "scene", std::cout);
  std::ofstream(dir / "run.cfg") << "input = " << (dir / "scene" / "image.pfm").string() << "\nout = "
                                 << (dir / "out").string() << "\nk = 2\ns = 5\nlambda = 10\n";
  ASSERT_EQ(run_tool("segment --config " + (dir / "run.cfg").string() + " --lambda 20", dir / "log"), kExitOk)
      << slurp(dir / "log");
  const KeyValues manifest = read_key_value_file(dir / "out" / "manifest.txt");
  EXPECT_EQ(manifest.at("lambda"), "20");
  EXPECT_EQ(manifest.at("s"), "5");
}

TEST(Tool, ExitCodes) {
  const fs::path dir = scratch("tool_exit");
  EXPECT_EQ(run_tool("--help", dir / "help.log"), kExitOk);
  EXPECT_EQ(run_tool("", dir / "none.log"), kExitUsage);
  EXPECT_EQ(run_tool("segment --bogus", dir / "flag.log"), kExitUsage);
  EXPECT_EQ(run_tool("segment --input x.png --out o", dir / "k.log"), kExitUsage);
  EXPECT_NE(slurp(dir / "k.log").find("k:"), std::string::npos);
  EXPECT_EQ(run_tool("segment --input " + (dir / "missing.png").string() + " --out " + (dir / "o").string() +
                         " --k 2",
                     dir / "missing.log"),
            kExitFailure);
  EXPECT_NE(slurp(dir / "missing.log").find("input:"), std::string::npos);
  EXPECT_EQ(run_tool("synth crystal --out " + (dir / "s").string() + " --lattice cubic", dir / "lat.log"),
            kExitUsage);
}

TEST(Tool, SynthEvalAndReproduce) {
  const fs::path dir = scratch("tool_synth");
  ASSERT_EQ(run_tool("synth crystal --size 48 --grains 2 --rotation 30 --noise 1.0 --seed 7 --out " +
                         (dir / "scene").string(),
                     dir / "synth.log"),
            kExitOk);
  EXPECT_TRUE(fs::exists(dir / "scene" / "image.pfm"));
  EXPECT_TRUE(fs::exists(dir / "scene" / "truth.png"));
  const std::string truth = (dir / "scene" / "truth.png").string();
  ASSERT_EQ(run_tool("eval --pred " + truth + " --truth " + truth, dir / "eval.log"), kExitOk);
  EXPECT_NE(slurp(dir / "eval.log").find("pixel_accuracy 1"), std::string::npos) << slurp(dir / "eval.log");

  EXPECT_EQ(run_tool("reproduce --suite operators --out " + (dir / "rep").string(), dir / "rep.log"), kExitOk);
  const std::string log = slurp(dir / "rep.log");
  for (const char* id : {"C1 ", "C2 ", "C3 ", "C4 ", "C5 "}) EXPECT_NE(log.find(std::string("PASS  ") + id), std::string::npos) << id;
  EXPECT_TRUE(fs::exists(dir / "rep" / "summary.tsv"));
}

}  // namespace
}  // namespace mpseg::cli
