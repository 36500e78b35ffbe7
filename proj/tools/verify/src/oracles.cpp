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

#include "mpseg/verify/oracles.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mpseg/grid_ops.hpp"

namespace mpseg::verify {

std::vector<double> simplex_projection_by_enumeration(std::span<const double> v) {
  const std::size_t k = v.size();
  if (k == 0 || k > 20) throw std::invalid_argument("simplex oracle: need 1..20 coordinates");
  std::vector<double> best(k, 0.0);
  double best_dist = std::numeric_limits<double>::infinity();
  std::vector<double> candidate(k);
  for (std::uint32_t support = 1; support < (1u << k); ++support) {
    // On the support S the KKT system of min |w - v|^2, sum w = 1 gives
    // w_S = v_S - (sum v_S - 1) / |S|.
    double sum = 0.0;
    int size = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (support & (1u << j)) {
        sum += v[j];
        ++size;
      }
    }
    const double shift = (sum - 1.0) / size;
    bool feasible = true;
    double dist = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      candidate[j] = (support & (1u << j)) ? v[j] - shift : 0.0;
      if (candidate[j] < 0.0) feasible = false;
      dist += (candidate[j] - v[j]) * (candidate[j] - v[j]);
    }
    if (feasible && dist < best_dist) {
      best_dist = dist;
      best = candidate;
    }
  }
  return best;
}

double potts_energy(GridExtent extent, const Eigen::MatrixXd& f, std::span<const int> labels, double lambda) {
  if (labels.size() != extent.size() || static_cast<std::size_t>(f.rows()) != extent.size()) {
    throw std::invalid_argument("potts_energy: size mismatch");
  }
  double data = 0.0;
  int cut = 0;
  for (int y = 0; y < extent.height; ++y) {
    for (int x = 0; x < extent.width; ++x) {
      const std::size_t i = extent.index(x, y);
      data += f(static_cast<Eigen::Index>(i), labels[i]);
      if (x + 1 < extent.width && labels[i] != labels[i + 1]) ++cut;
      if (y + 1 < extent.height && labels[i] != labels[i + extent.width]) ++cut;
    }
  }
  return data + 2.0 * lambda * cut;
}

PottsOptimum brute_force_potts(GridExtent extent, const Eigen::MatrixXd& f, double lambda) {
  const int n = static_cast<int>(extent.size());
  const int k = static_cast<int>(f.cols());
  if (k < 1 || std::pow(static_cast<double>(k), n) > static_cast<double>(1 << 24)) {
    throw std::invalid_argument("brute_force_potts: search space too large");
  }
  std::vector<int> labels(n, 0);
  PottsOptimum best{std::numeric_limits<double>::infinity(), labels};
  while (true) {
    const double e = potts_energy(extent, f, labels, lambda);
    if (e < best.energy) best = {e, labels};
    int pos = 0;
    while (pos < n && ++labels[pos] == k) labels[pos++] = 0;
    if (pos == n) break;
  }
  return best;
}

double gradient_norm_squared_estimate(GridExtent extent, int iterations, std::uint64_t seed) {
  const std::size_t n = extent.size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> x(n), gx(n), gy(n), y(n);
  for (double& v : x) v = normal(rng);
  double estimate = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const double norm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    for (double& v : x) v /= norm;
    gradient(extent, x, gx, gy);
    divergence(extent, gx, gy, y);
    for (double& v : y) v = -v;
    estimate = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
    x.swap(y);
  }
  return estimate;
}

Eigen::VectorXd dft_modulus_direct(const ImageGrid& image, int x0, int y0, int side) {
  const double two_pi = 2.0 * std::numbers::pi;
  Eigen::VectorXd out(side * side);
  for (int ky = 0; ky < side; ++ky) {
    for (int kx = 0; kx < side; ++kx) {
      std::complex<double> acc = 0.0;
      for (int wy = 0; wy < side; ++wy) {
        for (int wx = 0; wx < side; ++wx) {
          const double phase = -two_pi * (static_cast<double>(ky * wy) / side + static_cast<double>(kx * wx) / side);
          acc += image.at(x0 + wx, y0 + wy) * std::polar(1.0, phase);
        }
      }
      out(ky * side + kx) = std::abs(acc);
    }
  }
  return out;
}

namespace {

int reflect(int i, int n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) i = i < 0 ? -i : 2 * (n - 1) - i;
  return i;
}

}  // namespace

double gabor_magnitude_direct(const ImageGrid& image, double size, double orientation, int x, int y) {
  const double env = 0.56 * size;
  const int r = static_cast<int>(std::ceil(3.0 * env));
  const int side = 2 * r + 1;
  const double omega = 2.0 * std::numbers::pi / size;
  Eigen::MatrixXd g(side, side);
  Eigen::MatrixXcd carrier(side, side);
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      g(dy + r, dx + r) = std::exp(-(dx * dx + dy * dy) / (2.0 * env * env));
      carrier(dy + r, dx + r) =
          std::polar(1.0, omega * (std::cos(orientation) * dx + std::sin(orientation) * dy));
    }
  }
  g /= g.sum();
  const Eigen::MatrixXcd modulated = g.cast<std::complex<double>>().cwiseProduct(carrier);
  const Eigen::MatrixXcd kernel = modulated - modulated.sum() * g.cast<std::complex<double>>();
  const ImageGrid gray = image.luminance();
  std::complex<double> acc = 0.0;
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx)
      acc += kernel(dy + r, dx + r) * gray.at(reflect(x + dx, gray.width()), reflect(y + dy, gray.height()));
  return std::abs(acc);
}

std::int64_t best_matching_overlap(const SegMask& pred, const SegMask& truth) {
  const auto counts = confusion_matrix(pred, truth);
  const int kp = pred.label_count();
  const int kt = truth.label_count();
  if (kp > 8 || kt > 8) throw std::invalid_argument("best_matching_overlap: at most 8 labels");
  const int n = std::max(kp, kt);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t best = 0;
  do {
    std::int64_t total = 0;
    for (int p = 0; p < kp; ++p)
      if (perm[p] < kt) total += counts[p][perm[p]];
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double svd_tail(const Eigen::MatrixXd& centred, int r) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(centred);
  const Eigen::VectorXd s = svd.singularValues();
  double tail = 0.0;
  for (Eigen::Index j = r; j < s.size(); ++j) tail += s(j) * s(j);
  return tail;
}

}  // namespace mpseg::verify
