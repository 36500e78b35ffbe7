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
#include <cstddef>

#include "mpseg/image.hpp"

namespace mpseg {

/// Soft labeling: n x k, row i is pixel i's point on the probability simplex,
/// column l is the (row-major) image of label l.
struct LabelField {
  GridExtent extent;
  Eigen::MatrixXd u;

  LabelField() = default;
  LabelField(GridExtent e, int k);

  /// Every pixel gets 1/k for every label.
  static LabelField uniform(GridExtent e, int k);

  [[nodiscard]] int labels() const { return static_cast<int>(u.cols()); }
  [[nodiscard]] std::size_t pixels() const { return static_cast<std::size_t>(u.rows()); }

  /// 0-based argmax per pixel; ties go to the lowest label.
  [[nodiscard]] std::vector<int> hard_labels() const;
  /// Largest violation of row nonnegativity or unit row sum.
  [[nodiscard]] double simplex_violation() const;
};

/// One unit-ball-constrained 2-vector per (pixel, label).
struct DualField {
  GridExtent extent;
  Eigen::MatrixXd px;  // n x k
  Eigen::MatrixXd py;  // n x k

  DualField() = default;
  DualField(GridExtent e, int k);

  [[nodiscard]] double max_norm() const;
};

/// Per-pixel, per-label assignment costs f_li >= 0 (n x k).
struct IndicatorField {
  GridExtent extent;
  Eigen::MatrixXd f;
};

struct SolverParams {
  double sigma = 1.0 / 8.0;
  double tau = 1.0 / 8.0;
  double theta = 0.7;
  double epsilon = 1e-3;
  int max_iterations = 10000;
  double lambda = 1.0;

  /// Upper bound on the squared norm of the forward-difference gradient.
  static constexpr double kGradientNormSquaredBound = 8.0;

  /// Throws std::invalid_argument naming the first invalid field.
  void validate() const;
};

struct SolveResult {
  LabelField u;
  DualField p;
  int iterations = 0;
  double last_change = 0.0;  // RMS of the final primal update
  bool converged = false;
};

/// Projects every p_li onto the closed unit disc, in place.
void resolvent_dual(DualField& p);

/// Per pixel: u_i <- project_simplex(u_i - (tau/lambda) f_i), in place.
void resolvent_primal(LabelField& u, const IndicatorField& f, double tau, double lambda);

/// Relaxed energy sum_li f_li u_li + lambda * sum_l TV(u_l).
[[nodiscard]] double relaxed_energy(const IndicatorField& f, const LabelField& u, double lambda);

/// Data term sum_li f_li u_li alone.
[[nodiscard]] double fidelity_energy(const IndicatorField& f, const LabelField& u);

/// Primal-dual iteration for the relaxed multi-label problem
///
///   min_{u in simplex^n} max_{|p_li| <= 1}  sum_li f_li u_li + lambda <K u_l, p_l>
///
/// starting from (u0, p0). Iterates until the RMS change of the feasible
/// primal iterate drops below params.epsilon, or after max_iterations + 1
/// passes. The returned u is the feasible (non-extrapolated) iterate.
/// Throws NumericalError if an iterate becomes non-finite.
[[nodiscard]] SolveResult solve(const IndicatorField& f, const LabelField& u0, const DualField& p0,
                                const SolverParams& params);

/// Cold start: u = 1/k, p = 0.
[[nodiscard]] SolveResult solve(const IndicatorField& f, const SolverParams& params);

}  // namespace mpseg
