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

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "mpseg/cli/commands.hpp"
#include "mpseg/cli/raster_io.hpp"
#include "mpseg/verify/acceptance.hpp"

namespace {

using namespace mpseg;
using cli::KeyValues;

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) out += (out.empty() ? "" : ",") + item;
  return out;
}

// Flag name -> config key for `segment`. Repeatable flags are joined with commas.
struct SegmentFlags {
  std::string config;
  std::map<std::string, std::string> scalars;
  std::vector<std::string> s;
  std::vector<std::string> weights;

  void attach(CLI::App& cmd) {
    cmd.add_option("--config", config, "key=value file; flags override its entries");
    const std::vector<std::pair<std::string, std::string>> options{
        {"--input", "input image (png, pgm, ppm, pfm)"},
        {"--out", "output directory"},
        {"--features", "spectral-hist | fft-mod"},
        {"--k", "number of segments (>= 2)"},
        {"--estimate-omega", "estimate k from the eigenvalue tail with this threshold"},
        {"--lambda", "boundary length weight"},
        {"--delta", "edgeness threshold factor"},
        {"--bins", "histogram bins per filter"},
        {"--gabor-sizes", "comma-separated Gabor sizes"},
        {"--gabor-orientations-deg", "comma-separated Gabor orientations in degrees"},
        {"--gabor-intensity", "true | false: include the intensity filter"},
        {"--padding", "mirror | clamp"},
        {"--outer-iterations", "mean refresh rounds"},
        {"--sigma", "dual step"},
        {"--tau", "primal step"},
        {"--theta", "extrapolation"},
        {"--epsilon", "stopping tolerance"},
        {"--max-iterations", "iteration cap per solve"},
        {"--seed", "k-means seed"},
    };
    for (const auto& [flag, help] : options) {
      std::string key = flag.substr(2);
      std::replace(key.begin(), key.end(), '-', '_');
      cmd.add_option(flag, scalars[key], help);
    }
    cmd.add_option("--s", s, "window half-width; repeat for several scales");
    cmd.add_option("--weight", weights, "weight of the matching --s scale");
  }

  KeyValues given(const CLI::App& cmd) const {
    KeyValues kv;
    for (const auto& [key, value] : scalars) {
      std::string flag = "--" + key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      if (cmd.count(flag) > 0) kv[key] = value;
    }
    if (!s.empty()) kv["s"] = join(s);
    if (!weights.empty()) kv["weights"] = join(weights);
    return kv;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Multi-phase segmentation by structure"};
  app.require_subcommand(1);

  auto* segment_cmd = app.add_subcommand("segment", "segment an image");
  SegmentFlags segment_flags;
  segment_flags.attach(*segment_cmd);

  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic scene with ground truth");
  synth_cmd->require_subcommand(1);
  cli::CrystalSceneOptions crystal;
  std::string lattice = "square";
  std::string crystal_out;
  auto* crystal_cmd = synth_cmd->add_subcommand("crystal", "lattice grains with Gaussian atoms");
  crystal_cmd->add_option("--out", crystal_out, "output directory")->required();
  crystal_cmd->add_option("--size", crystal.size, "image side in pixels");
  crystal_cmd->add_option("--grains", crystal.grains, "number of grains");
  crystal_cmd->add_option("--rotation", crystal.rotation_deg, "orientation step between grains (degrees)");
  crystal_cmd->add_option("--period", crystal.period, "lattice spacing in pixels");
  crystal_cmd->add_option("--lattice", lattice, "square | hexagonal | mixed");
  crystal_cmd->add_option("--noise", crystal.noise, "noise std as a fraction of the peak intensity");
  crystal_cmd->add_option("--seed", crystal.seed, "layout and noise seed");

  cli::TextureSceneOptions texture;
  std::string pattern = "sinusoid";
  std::string texture_out;
  auto* texture_cmd = synth_cmd->add_subcommand("texture", "Voronoi mosaic of oriented patterns");
  texture_cmd->add_option("--out", texture_out, "output directory")->required();
  texture_cmd->add_option("--size", texture.size, "image side in pixels");
  texture_cmd->add_option("--regions", texture.regions, "number of regions");
  texture_cmd->add_option("--period", texture.period, "pattern period in pixels");
  texture_cmd->add_option("--pattern", pattern, "sinusoid | checkerboard | noise");
  texture_cmd->add_option("--seed", texture.seed, "layout and phase seed");

  auto* eval_cmd = app.add_subcommand("eval", "compare a predicted mask with ground truth");
  std::string pred_path;
  std::string truth_path;
  std::string csv_path;
  double overlap = 0.75;
  eval_cmd->add_option("--pred", pred_path, "predicted label map")->required();
  eval_cmd->add_option("--truth", truth_path, "ground-truth label map")->required();
  eval_cmd->add_option("--csv", csv_path, "also write metric,value rows here");
  eval_cmd->add_option("--overlap", overlap, "overlap threshold of the correct-segmentation rate");

  auto* reproduce_cmd = app.add_subcommand("reproduce", "run the acceptance suite");
  std::string suite = "all";
  std::string reproduce_out = "reproduce_out";
  reproduce_cmd->add_option("--suite", suite, "operators | crystal | texture | all");
  reproduce_cmd->add_option("--out", reproduce_out, "directory for intermediate files and summary.tsv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  try {
    if (segment_cmd->parsed()) {
      KeyValues kv;
      if (!segment_flags.config.empty()) kv = cli::read_key_value_file(segment_flags.config);
      kv = cli::merge_key_values(kv, segment_flags.given(*segment_cmd));
      const cli::SegmentRunConfig config = cli::resolve_segment_config(kv);
      (void)cli::run_segment(config, std::cout);
    } else if (crystal_cmd->parsed()) {
      crystal.lattice = cli::parse_lattice(lattice);
      cli::write_synth_outputs(cli::make_crystal_scene(crystal), crystal_out, std::cout);
    } else if (texture_cmd->parsed()) {
      texture.pattern = cli::parse_pattern(pattern);
      cli::write_synth_outputs(cli::make_texture_scene(texture), texture_out, std::cout);
    } else if (eval_cmd->parsed()) {
      SegMask pred;
      SegMask truth;
      try {
        pred = cli::read_mask(pred_path);
      } catch (const cli::RasterError& e) {
        throw cli::RasterError(std::string("pred: ") + e.what());
      }
      try {
        truth = cli::read_mask(truth_path);
      } catch (const cli::RasterError& e) {
        throw cli::RasterError(std::string("truth: ") + e.what());
      }
      const cli::EvalReport report = cli::evaluate(pred, truth, overlap);
      cli::write_eval_table(std::cout, report);
      if (!csv_path.empty()) cli::write_eval_csv(csv_path, report);
    } else if (reproduce_cmd->parsed()) {
      return verify::run_reproduce(verify::parse_suite(suite), reproduce_out, std::cout);
    }
  } catch (const cli::UsageError& e) {
    std::cerr << "mpseg: usage error: " << e.what() << "\nRun with --help for usage.\n";
    return cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "mpseg: error: " << e.what() << "\n";
    return cli::kExitFailure;
  }
  return cli::kExitOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
