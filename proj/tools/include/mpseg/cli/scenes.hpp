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

#pragma once

#include <cstdint>
#include <string>

#include "mpseg/synth.hpp"

namespace mpseg::cli {

enum class LatticeChoice { kSquare, kHexagonal, kMixed };

/// Synthetic crystal: `grains` grains with lattice orientation j * rotation
/// for grain j = 0, 1, ... Two grains split the image at x = size / 2;
/// more grains use a random Voronoi layout drawn from `seed`. kMixed alternates
/// square (even j) and hexagonal (odd j) lattices.
struct CrystalSceneOptions {
  int size = 256;
  int grains = 2;
  double rotation_deg = 30.0;
  double period = 8.0;
  LatticeChoice lattice = LatticeChoice::kSquare;
  double noise = 0.0;  // Gaussian std as a fraction of the maximum intensity
  std::uint64_t seed = 7;
};

/// Voronoi mosaic of `regions` patterns with orientations j * pi / regions.
struct TextureSceneOptions {
  int size = 512;
  int regions = 5;
  double period = 7.0;
  PatternKind pattern = PatternKind::kSinusoid;
  std::uint64_t seed = 1;
};

[[nodiscard]] SynthImage make_crystal_scene(const CrystalSceneOptions& options);
[[nodiscard]] SynthImage make_texture_scene(const TextureSceneOptions& options);

[[nodiscard]] LatticeChoice parse_lattice(const std::string& text);
[[nodiscard]] PatternKind parse_pattern(const std::string& text);

}  // namespace mpseg::cli
