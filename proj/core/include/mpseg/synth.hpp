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

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

#include "mpseg/image.hpp"

namespace mpseg {

/// Bravais lattice {n1 a1 + n2 a2 + origin} decorated with Gaussian atoms.
struct LatticeSpec {
  Eigen::Vector2d a1{8.0, 0.0};
  Eigen::Vector2d a2{0.0, 8.0};
  Eigen::Vector2d origin{0.0, 0.0};
  double atom_sigma = 1.5;
  double amplitude = 255.0;

  static LatticeSpec square(double period, double angle_rad = 0.0);
  /// Triangular (hexagonal close-packed) lattice with nearest-neighbour
  /// distance `period`.
  static LatticeSpec hexagonal(double period, double angle_rad = 0.0);

  /// Throws std::invalid_argument for |det(a1, a2)| <= 1e-6 or sigma <= 0.
  void validate() const;
};

/// Integer label map 1..g over an extent.
struct LabelLayout {
  GridExtent extent;
  std::vector<int> labels;

  [[nodiscard]] int regions() const;
};

struct GrainScene {
  LabelLayout layout;
  std::vector<LatticeSpec> grains;  // grains[g - 1] fills label g
};

struct SynthImage {
  ImageGrid image;
  LabelLayout truth;
};

/// Two regions split by the vertical line x = split (label 1 left).
[[nodiscard]] LabelLayout vertical_split(GridExtent extent, int split);
/// Nearest-site partition; site j gets label j + 1.
[[nodiscard]] LabelLayout voronoi_layout(GridExtent extent, const std::vector<Eigen::Vector2d>& sites);
/// `regions` sites drawn with a minimum spacing so each cell stays large.
[[nodiscard]] LabelLayout random_voronoi(GridExtent extent, int regions, std::uint64_t seed);

/// Sum of Gaussian blobs at the lattice points of the grain owning each
/// pixel. Ownership is hard: atoms of other grains never leak across.
[[nodiscard]] SynthImage render_crystal(const GrainScene& scene);

/// Adds i.i.d. N(0, (level * max(image))^2) noise; output is not clamped.
[[nodiscard]] ImageGrid add_gaussian_noise(const ImageGrid& image, double level, std::uint64_t seed);

enum class PatternKind { kSinusoid, kCheckerboard, kOrientedNoise };

struct TexturePattern {
  PatternKind kind = PatternKind::kSinusoid;
  double orientation = 0.0;  // radians, direction of the wave vector
  double period = 8.0;       // pixels
  double mean = 128.0;
  double contrast = 100.0;   // peak deviation from the mean
};

/// Fills each region of `layout` with its pattern (textures[label - 1]).
/// Throws std::invalid_argument when the number of patterns differs from
/// the number of regions.
[[nodiscard]] SynthImage render_texture_mosaic(const LabelLayout& layout, const std::vector<TexturePattern>& textures,
                                               std::uint64_t seed);

}  // namespace mpseg
