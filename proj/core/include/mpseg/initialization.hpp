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
#include <vector>

#include "mpseg/pca.hpp"
#include "mpseg/primal_dual.hpp"

namespace mpseg {

/// Delta_i: summed coefficient distance to the four pixels at offset +-s.
struct EdgenessField {
  GridExtent extent;
  std::vector<double> delta;

  [[nodiscard]] double mean() const;
};

struct InteriorSelection {
  std::vector<Eigen::Index> indices;  // pixel indices kept for clustering
  Eigen::MatrixXd points;             // r x |indices|
  bool fallback = false;              // true when the full set was used
};

struct ClusterResult {
  Eigen::MatrixXd centers;  // r x k
  std::vector<int> assignment;
  double inertia = 0.0;
  int iterations = 0;
  int reseeded = 0;  // empty clusters re-seeded during the best restart
};

struct KMeansOptions {
  int restarts = 10;
  int max_iterations = 100;
};

/// Neighbours outside the grid contribute nothing. Requires s >= 1.
[[nodiscard]] EdgenessField edgeness(const CoefficientField& alpha, int s);

/// Keeps pixels whose edgeness is strictly below delta_thresh * mean(Delta);
/// if fewer than `min_points` survive, all pixels are kept.
[[nodiscard]] InteriorSelection select_interior(const CoefficientField& alpha, const EdgenessField& delta,
                                                double delta_thresh, int min_points);

/// Lloyd's algorithm with distance-weighted (k-means++) seeding, best of
/// `restarts` by inertia. Empty clusters are re-seeded at the point
/// farthest from its centre. Deterministic for a given seed.
/// Throws std::invalid_argument if there are fewer points than k.
[[nodiscard]] ClusterResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                                   const KMeansOptions& options = {});

/// One-hot labeling by nearest centre; ties go to the lowest label.
[[nodiscard]] LabelField initial_labeling(const CoefficientField& alpha, const Eigen::MatrixXd& centers);

/// Index of the centre nearest to `point` (lowest index on ties).
[[nodiscard]] int nearest_center(const Eigen::Ref<const Eigen::VectorXd>& point, const Eigen::MatrixXd& centers,
                                 double* distance_sq = nullptr);

}  // namespace mpseg
