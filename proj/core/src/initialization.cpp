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

#include "mpseg/initialization.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace mpseg {

double EdgenessField::mean() const {
  if (delta.empty()) return 0.0;
  return std::accumulate(delta.begin(), delta.end(), 0.0) / static_cast<double>(delta.size());
}

EdgenessField edgeness(const CoefficientField& alpha, int s) {
  if (s < 1) throw std::invalid_argument("edgeness: s must be >= 1");
  const GridExtent e = alpha.extent;
  if (static_cast<std::size_t>(alpha.pixels()) != e.size()) {
    throw std::invalid_argument("edgeness: coefficient count does not match grid");
  }
  EdgenessField out{e, std::vector<double>(e.size(), 0.0)};
  constexpr int kOffsets[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int y = 0; y < e.height; ++y) {
    for (int x = 0; x < e.width; ++x) {
      const std::size_t i = e.index(x, y);
      double sum = 0.0;
      for (const auto& o : kOffsets) {
        const int nx = x + o[0] * s;
        const int ny = y + o[1] * s;
        if (!e.contains(nx, ny)) continue;
        sum += (alpha.alpha.col(static_cast<Eigen::Index>(i)) -
                alpha.alpha.col(static_cast<Eigen::Index>(e.index(nx, ny))))
                   .norm();
      }
      out.delta[i] = sum;
    }
  }
  return out;
}

InteriorSelection select_interior(const CoefficientField& alpha, const EdgenessField& delta, double delta_thresh,
                                  int min_points) {
  if (!(delta_thresh > 0.0)) throw std::invalid_argument("select_interior: delta must be > 0");
  if (delta.delta.size() != static_cast<std::size_t>(alpha.pixels())) {
    throw std::invalid_argument("select_interior: edgeness and coefficients disagree on pixel count");
  }
  InteriorSelection sel;
  const double threshold = delta_thresh * delta.mean();
  for (std::size_t i = 0; i < delta.delta.size(); ++i)
    if (delta.delta[i] < threshold) sel.indices.push_back(static_cast<Eigen::Index>(i));
  if (sel.indices.size() < static_cast<std::size_t>(std::max(min_points, 1))) {
    sel.fallback = true;
    sel.indices.resize(delta.delta.size());
    std::iota(sel.indices.begin(), sel.indices.end(), Eigen::Index{0});
  }
  sel.points.resize(alpha.rank(), static_cast<Eigen::Index>(sel.indices.size()));
  for (std::size_t j = 0; j < sel.indices.size(); ++j)
    sel.points.col(static_cast<Eigen::Index>(j)) = alpha.alpha.col(sel.indices[j]);
  return sel;
}

int nearest_center(const Eigen::Ref<const Eigen::VectorXd>& point, const Eigen::MatrixXd& centers,
                   double* distance_sq) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index l = 0; l < centers.cols(); ++l) {
    const double d = (point - centers.col(l)).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(l);
    }
  }
  if (distance_sq != nullptr) *distance_sq = best_d;
  return best;
}

namespace {

Eigen::MatrixXd seed_centers(const Eigen::MatrixXd& points, int k, std::mt19937_64& rng) {
  const Eigen::Index n = points.cols();
  Eigen::MatrixXd centers(points.rows(), k);
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  centers.col(0) = points.col(pick(rng));
  std::vector<double> d2(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], (points.col(i) - centers.col(c - 1)).squaredNorm());
      total += d2[i];
    }
    Eigen::Index chosen = 0;
    if (total > 0.0) {
      std::uniform_real_distribution<double> unit(0.0, total);
      const double target = unit(rng);
      double run = 0.0;
      chosen = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        run += d2[i];
        if (run >= target && d2[i] > 0.0) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = pick(rng);
    }
    centers.col(c) = points.col(chosen);
  }
  return centers;
}

ClusterResult lloyd(const Eigen::MatrixXd& points, Eigen::MatrixXd centers, int max_iterations) {
  const Eigen::Index n = points.cols();
  const int k = static_cast<int>(centers.cols());
  ClusterResult result;
  result.assignment.assign(static_cast<std::size_t>(n), -1);
  std::vector<double> dist(static_cast<std::size_t>(n));
  std::vector<Eigen::Index> counts(k);

  for (int it = 0;; ++it) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const int a = nearest_center(points.col(i), centers, &dist[i]);
      if (a != result.assignment[i]) {
        result.assignment[i] = a;
        changed = true;
      }
    }
    result.iterations = it;
    if ((!changed && it > 0) || it >= max_iterations) break;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(points.rows(), k);
    std::fill(counts.begin(), counts.end(), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.col(result.assignment[i]) += points.col(i);
      ++counts[result.assignment[i]];
    }
    for (int l = 0; l < k; ++l) {
      if (counts[l] > 0) {
        centers.col(l) = sums.col(l) / static_cast<double>(counts[l]);
        continue;
      }
      // Empty cluster: move it onto the worst-fitting point.
      const auto far = std::max_element(dist.begin(), dist.end()) - dist.begin();
      centers.col(l) = points.col(far);
      dist[far] = 0.0;
      ++result.reseeded;
    }
  }
  result.centers = std::move(centers);
  result.inertia = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) result.inertia += dist[i];
  return result;
}

}  // namespace

ClusterResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, const KMeansOptions& options) {
  if (k < 1) throw std::invalid_argument("kmeans: k must be >= 1");
  if (points.cols() < k) {
    throw std::invalid_argument("kmeans: " + std::to_string(points.cols()) + " points cannot form " +
                                std::to_string(k) + " clusters");
  }
  if (options.restarts < 1 || options.max_iterations < 1) throw std::invalid_argument("kmeans: bad options");
  std::mt19937_64 rng(seed);
  ClusterResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < options.restarts; ++r) {
    ClusterResult candidate = lloyd(points, seed_centers(points, k, rng), options.max_iterations);
    if (candidate.inertia < best.inertia) best = std::move(candidate);
  }
  return best;
}

LabelField initial_labeling(const CoefficientField& alpha, const Eigen::MatrixXd& centers) {
  if (centers.rows() != alpha.rank()) throw std::invalid_argument("initial_labeling: dimension mismatch");
  LabelField u(alpha.extent, static_cast<int>(centers.cols()));
  for (Eigen::Index i = 0; i < alpha.pixels(); ++i) u.u(i, nearest_center(alpha.alpha.col(i), centers)) = 1.0;
  return u;
}

}  // namespace mpseg
