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

#include "mpseg/synth.hpp"

#include <Eigen/Geometry>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace mpseg {

LatticeSpec LatticeSpec::square(double period, double angle_rad) {
  LatticeSpec spec;
  const Eigen::Rotation2Dd rot(angle_rad);
  spec.a1 = rot * Eigen::Vector2d(period, 0.0);
  spec.a2 = rot * Eigen::Vector2d(0.0, period);
  return spec;
}

LatticeSpec LatticeSpec::hexagonal(double period, double angle_rad) {
  LatticeSpec spec;
  const Eigen::Rotation2Dd rot(angle_rad);
  spec.a1 = rot * Eigen::Vector2d(period, 0.0);
  spec.a2 = rot * Eigen::Vector2d(0.5 * period, std::sqrt(3.0) / 2.0 * period);
  return spec;
}

void LatticeSpec::validate() const {
  const double det = a1.x() * a2.y() - a1.y() * a2.x();
  if (!(std::abs(det) > 1e-6)) throw std::invalid_argument("LatticeSpec: lattice vectors are linearly dependent");
  if (!(atom_sigma > 0.0)) throw std::invalid_argument("LatticeSpec: atom_sigma must be > 0");
}

int LabelLayout::regions() const {
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
}

LabelLayout vertical_split(GridExtent extent, int split) {
  LabelLayout layout{extent, std::vector<int>(extent.size())};
  for (int y = 0; y < extent.height; ++y)
    for (int x = 0; x < extent.width; ++x) layout.labels[extent.index(x, y)] = x < split ? 1 : 2;
  return layout;
}

LabelLayout voronoi_layout(GridExtent extent, const std::vector<Eigen::Vector2d>& sites) {
  if (sites.empty()) throw std::invalid_argument("voronoi_layout: no sites");
  LabelLayout layout{extent, std::vector<int>(extent.size())};
  for (int y = 0; y < extent.height; ++y) {
    for (int x = 0; x < extent.width; ++x) {
      const Eigen::Vector2d p(x, y);
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < sites.size(); ++j) {
        const double d = (p - sites[j]).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(j);
        }
      }
      layout.labels[extent.index(x, y)] = best + 1;
    }
  }
  return layout;
}

LabelLayout random_voronoi(GridExtent extent, int regions, std::uint64_t seed) {
  if (regions < 1) throw std::invalid_argument("random_voronoi: regions must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.1 * extent.width, 0.9 * extent.width);
  std::uniform_real_distribution<double> uy(0.1 * extent.height, 0.9 * extent.height);
  double spacing = 0.75 * std::sqrt(static_cast<double>(extent.size()) / regions);
  std::vector<Eigen::Vector2d> sites;
  int attempts = 0;
  while (static_cast<int>(sites.size()) < regions) {
    const Eigen::Vector2d candidate(ux(rng), uy(rng));
    const bool ok = std::all_of(sites.begin(), sites.end(),
                                [&](const Eigen::Vector2d& s) { return (s - candidate).norm() >= spacing; });
    if (ok) sites.push_back(candidate);
    if (++attempts % 1000 == 0) spacing *= 0.9;
  }
  return voronoi_layout(extent, sites);
}

SynthImage render_crystal(const GrainScene& scene) {
  const GridExtent e = scene.layout.extent;
  if (scene.layout.labels.size() != e.size()) throw std::invalid_argument("render_crystal: layout size mismatch");
  if (static_cast<int>(scene.grains.size()) < scene.layout.regions()) {
    throw std::invalid_argument("render_crystal: fewer lattices than regions");
  }
  for (const auto& g : scene.grains) g.validate();

  struct Prepared {
    Eigen::Matrix2d inverse;
    int reach1 = 0;
    int reach2 = 0;
    double cutoff_sq = 0.0;
  };
  std::vector<Prepared> prepared;
  for (const auto& g : scene.grains) {
    Eigen::Matrix2d basis;
    basis << g.a1, g.a2;
    Prepared p;
    p.inverse = basis.inverse();
    const double cutoff = 4.0 * g.atom_sigma;
    p.cutoff_sq = cutoff * cutoff;
    p.reach1 = static_cast<int>(std::ceil(cutoff * p.inverse.row(0).norm())) + 1;
    p.reach2 = static_cast<int>(std::ceil(cutoff * p.inverse.row(1).norm())) + 1;
    prepared.push_back(p);
  }

  SynthImage out{ImageGrid(e.width, e.height, 1), scene.layout};
  for (int y = 0; y < e.height; ++y) {
    for (int x = 0; x < e.width; ++x) {
      const int label = scene.layout.labels[e.index(x, y)];
      const LatticeSpec& g = scene.grains[label - 1];
      if (g.amplitude == 0.0) continue;
      const Prepared& p = prepared[label - 1];
      const Eigen::Vector2d pos = Eigen::Vector2d(x, y) - g.origin;
      const Eigen::Vector2d c = p.inverse * pos;
      const int n1 = static_cast<int>(std::floor(c.x()));
      const int n2 = static_cast<int>(std::floor(c.y()));
      const double inv2s2 = 1.0 / (2.0 * g.atom_sigma * g.atom_sigma);
      double value = 0.0;
      for (int i = n1 - p.reach1; i <= n1 + p.reach1 + 1; ++i) {
        for (int j = n2 - p.reach2; j <= n2 + p.reach2 + 1; ++j) {
          const Eigen::Vector2d d = pos - (i * g.a1 + j * g.a2);
          const double d2 = d.squaredNorm();
          if (d2 <= p.cutoff_sq) value += std::exp(-d2 * inv2s2);
        }
      }
      out.image.at(x, y) = g.amplitude * value;
    }
  }
  return out;
}

ImageGrid add_gaussian_noise(const ImageGrid& image, double level, std::uint64_t seed) {
  if (!(level >= 0.0)) throw std::invalid_argument("add_gaussian_noise: level must be >= 0");
  ImageGrid out = image;
  if (level == 0.0) return out;
  const double stddev = level * image.max_value();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, stddev);
  for (double& v : out.values()) v += noise(rng);
  return out;
}

namespace {

// Unit-variance white noise smoothed by a Gaussian that is narrow along the
// orientation and long across it, rescaled to unit standard deviation.
std::vector<double> oriented_noise(GridExtent e, const TexturePattern& t, std::mt19937_64& rng) {
  std::normal_distribution<double> white(0.0, 1.0);
  std::vector<double> src(e.size());
  for (double& v : src) v = white(rng);
  const double along = std::max(0.5, t.period / 4.0);
  const double across = std::max(1.0, t.period);
  const int radius = static_cast<int>(std::ceil(3.0 * across));
  const double c = std::cos(t.orientation);
  const double s = std::sin(t.orientation);
  std::vector<double> taps;
  std::vector<std::pair<int, int>> offsets;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      const double u = dx * c + dy * s;
      const double v = -dx * s + dy * c;
      const double w = std::exp(-0.5 * (u * u / (along * along) + v * v / (across * across)));
      if (w < 1e-4) continue;
      taps.push_back(w);
      offsets.emplace_back(dx, dy);
    }
  }
  std::vector<double> out(e.size());
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int y = 0; y < e.height; ++y) {
    for (int x = 0; x < e.width; ++x) {
      double acc = 0.0;
      for (std::size_t j = 0; j < taps.size(); ++j) {
        // Periodic wrap keeps statistics uniform up to the border.
        const int xx = ((x + offsets[j].first) % e.width + e.width) % e.width;
        const int yy = ((y + offsets[j].second) % e.height + e.height) % e.height;
        acc += taps[j] * src[e.index(xx, yy)];
      }
      out[e.index(x, y)] = acc;
      sum += acc;
      sum_sq += acc * acc;
    }
  }
  const double n = static_cast<double>(e.size());
  const double mean = sum / n;
  const double sd = std::sqrt(std::max(sum_sq / n - mean * mean, 1e-300));
  for (double& v : out) v = (v - mean) / sd;
  return out;
}

}  // namespace

SynthImage render_texture_mosaic(const LabelLayout& layout, const std::vector<TexturePattern>& textures,
                                 std::uint64_t seed) {
  const GridExtent e = layout.extent;
  if (layout.labels.size() != e.size()) throw std::invalid_argument("render_texture_mosaic: layout size mismatch");
  if (static_cast<int>(textures.size()) != layout.regions()) {
    throw std::invalid_argument("render_texture_mosaic: " + std::to_string(textures.size()) + " patterns for " +
                                std::to_string(layout.regions()) + " regions");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  SynthImage out{ImageGrid(e.width, e.height, 1), layout};
  for (std::size_t t = 0; t < textures.size(); ++t) {
    const TexturePattern& tex = textures[t];
    if (!(tex.period > 0.0)) throw std::invalid_argument("render_texture_mosaic: period must be > 0");
    const int label = static_cast<int>(t) + 1;
    const double ph = phase(rng);
    const double k = 2.0 * std::numbers::pi / tex.period;
    const double c = std::cos(tex.orientation);
    const double s = std::sin(tex.orientation);
    std::vector<double> noise;
    if (tex.kind == PatternKind::kOrientedNoise) noise = oriented_noise(e, tex, rng);
    for (int y = 0; y < e.height; ++y) {
      for (int x = 0; x < e.width; ++x) {
        const std::size_t i = e.index(x, y);
        if (layout.labels[i] != label) continue;
        const double u = x * c + y * s;
        const double v = -x * s + y * c;
        double pattern = 0.0;
        switch (tex.kind) {
          case PatternKind::kSinusoid: pattern = std::cos(k * u + ph); break;
          case PatternKind::kCheckerboard:
            pattern = std::cos(k * u + ph) * std::cos(k * v + ph) >= 0.0 ? 1.0 : -1.0;
            break;
          case PatternKind::kOrientedNoise: pattern = noise[i]; break;
        }
        out.image.at(x, y) = tex.mean + tex.contrast * pattern;
      }
    }
  }
  return out;
}

}  // namespace mpseg
