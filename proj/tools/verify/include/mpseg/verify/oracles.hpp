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

// Slow reference computations used to check the fast implementations.
// Each oracle takes a different route from the code it checks.

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "mpseg/image.hpp"
#include "mpseg/metrics.hpp"

namespace mpseg::verify {

/// Euclidean projection onto the probability simplex by enumerating every
/// support set S, solving the equality-constrained QP on S in closed form
/// and keeping the nearest feasible candidate. Exponential in v.size().
[[nodiscard]] std::vector<double> simplex_projection_by_enumeration(std::span<const double> v);

/// Discrete Potts energy of a hard labeling (labels 0..k-1):
/// sum_i f(i, label_i) + lambda * sum_l Per(region l), perimeters counted in
/// unit pixel edges between 4-neighbours, image border excluded. Every cut
/// edge thus costs 2 lambda.
[[nodiscard]] double potts_energy(GridExtent extent, const Eigen::MatrixXd& f, std::span<const int> labels,
                                  double lambda);

struct PottsOptimum {
  double energy = 0.0;
  std::vector<int> labels;
};

/// Minimum of potts_energy over all k^n labelings (k^n <= 2^24).
[[nodiscard]] PottsOptimum brute_force_potts(GridExtent extent, const Eigen::MatrixXd& f, double lambda);

/// Power iteration on -div(grad(.)) from a random start; returns the
/// Rayleigh quotient after `iterations` steps, an estimate of ||grad||^2.
[[nodiscard]] double gradient_norm_squared_estimate(GridExtent extent, int iterations, std::uint64_t seed);

/// Modulus of the 2-D DFT of the side x side block whose top-left pixel is
/// (x0, y0), by direct summation. Row-major (ky, kx) order.
[[nodiscard]] Eigen::VectorXd dft_modulus_direct(const ImageGrid& image, int x0, int y0, int side);

/// |sum_{dx,dy} K(dx,dy) g(x+dx, y+dy)| for the zero-mean complex Gabor
/// kernel (wavelength `size`, envelope 0.56 * size, radius ceil(3 * 0.56 *
/// size)) built as a full 2-D array, with mirror boundary handling.
[[nodiscard]] double gabor_magnitude_direct(const ImageGrid& image, double size, double orientation, int x, int y);

/// Largest total overlap of any one-to-one assignment of predicted to truth
/// labels, by trying every permutation. Both masks must have <= 8 labels.
[[nodiscard]] std::int64_t best_matching_overlap(const SegMask& pred, const SegMask& truth);

/// sum_{j > r} sigma_j^2 from an SVD of the centred m x n matrix.
[[nodiscard]] double svd_tail(const Eigen::MatrixXd& centred, int r);

}  // namespace mpseg::verify
