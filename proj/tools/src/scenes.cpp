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

#include "mpseg/cli/scenes.hpp"

#include <numbers>

#include "mpseg/cli/config.hpp"

namespace mpseg::cli {

SynthImage make_crystal_scene(const CrystalSceneOptions& options) {
  if (options.size < 8) throw UsageError("size: must be >= 8");
  if (options.grains < 1) throw UsageError("grains: must be >= 1");
  if (!(options.period > 0.0)) throw UsageError("period: must be > 0");
  if (!(options.noise >= 0.0)) throw UsageError("noise: must be >= 0");
  const GridExtent extent{options.size, options.size};
  GrainScene scene;
  if (options.grains == 1) {
    scene.layout = LabelLayout{extent, std::vector<int>(extent.size(), 1)};
  } else if (options.grains == 2) {
    scene.layout = vertical_split(extent, options.size / 2);
  } else {
    scene.layout = random_voronoi(extent, options.grains, options.seed);
  }
  for (int j = 0; j < options.grains; ++j) {
    const double angle = j * options.rotation_deg * std::numbers::pi / 180.0;
    const bool hex = options.lattice == LatticeChoice::kHexagonal || (options.lattice == LatticeChoice::kMixed && j % 2 == 1);
    scene.grains.push_back(hex ? LatticeSpec::hexagonal(options.period, angle) : LatticeSpec::square(options.period, angle));
  }
  SynthImage out = render_crystal(scene);
  out.image = add_gaussian_noise(out.image, options.noise, options.seed);
  return out;
}

SynthImage make_texture_scene(const TextureSceneOptions& options) {
  if (options.size < 8) throw UsageError("size: must be >= 8");
  if (options.regions < 1) throw UsageError("regions: must be >= 1");
  if (!(options.period > 0.0)) throw UsageError("period: must be > 0");
  const GridExtent extent{options.size, options.size};
  const LabelLayout layout = random_voronoi(extent, options.regions, options.seed);
  std::vector<TexturePattern> patterns;
  for (int j = 0; j < options.regions; ++j) {
    TexturePattern t;
    t.kind = options.pattern;
    t.orientation = j * std::numbers::pi / options.regions;
    t.period = options.period;
    patterns.push_back(t);
  }
  return render_texture_mosaic(layout, patterns, options.seed);
}

LatticeChoice parse_lattice(const std::string& text) {
  if (text == "square") return LatticeChoice::kSquare;
  if (text == "hexagonal") return LatticeChoice::kHexagonal;
  if (text == "mixed") return LatticeChoice::kMixed;
  throw UsageError("lattice: expected square, hexagonal or mixed, got '" + text + "'");
}

PatternKind parse_pattern(const std::string& text) {
  if (text == "sinusoid") return PatternKind::kSinusoid;
  if (text == "checkerboard") return PatternKind::kCheckerboard;
  if (text == "noise") return PatternKind::kOrientedNoise;
  throw UsageError("pattern: expected sinusoid, checkerboard or noise, got '" + text + "'");
}

}  // namespace mpseg::cli
