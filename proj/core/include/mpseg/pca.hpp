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
#include <utility>

#include "mpseg/features.hpp"

namespace mpseg {

/// Number of leading eigenvalues kept for tail monitoring when the caller
/// does not ask for more.
inline constexpr int kDefaultEigenvalueCap = 64;

/// Principal components of mean-centred features.
///
/// Eigenvalues are those of A A^T for the centred m x n matrix A (no 1/n
/// normalisation). `eigenvalues` may hold more entries than `basis` has
/// columns; the extra ones only serve tail estimates.
struct PcaModel {
  Eigen::VectorXd mean;         // m
  Eigen::MatrixXd basis;        // m x r, orthonormal columns
  Eigen::VectorXd eigenvalues;  // nonincreasing, >= 0
  double frobenius_sq = 0.0;    // ||A||_F^2
  Eigen::Index samples = 0;     // n

  [[nodiscard]] int rank() const { return static_cast<int>(basis.cols()); }

  /// ||A||_F^2 - sum_{j <= r} lambda_j, clamped at zero.
  [[nodiscard]] double eigenvalue_tail(int r) const;

  /// Model restricted to the first r basis vectors (eigenvalues untouched).
  [[nodiscard]] PcaModel truncated(int r) const;

  /// alpha = basis^T (features - mean), r x n.
  [[nodiscard]] Eigen::MatrixXd project(const Eigen::MatrixXd& features) const;

  /// mean + basis * coefficients, m x k.
  [[nodiscard]] Eigen::MatrixXd reconstruct(const Eigen::MatrixXd& coefficients) const;
};

/// Coefficients alpha (r x n) on the feature grid.
struct CoefficientField {
  Eigen::MatrixXd alpha;
  GridExtent extent;

  [[nodiscard]] Eigen::Index rank() const { return alpha.rows(); }
  [[nodiscard]] Eigen::Index pixels() const { return alpha.cols(); }
};

/// Fits a rank-r PCA. Decomposes A A^T when m <= n, otherwise A^T A with
/// back-mapping. Each basis vector's largest-magnitude component is made
/// positive. `eigenvalue_cap` bounds how many eigenvalues are reported
/// (at least r, at most min(m, n)). Throws std::invalid_argument if r is
/// outside [1, min(m, n)].
[[nodiscard]] std::pair<PcaModel, CoefficientField> fit_pca(const FeatureMatrix& features, int r,
                                                           int eigenvalue_cap = kDefaultEigenvalueCap);

/// Same as fit_pca without projecting the data.
[[nodiscard]] PcaModel fit_pca_model(const FeatureMatrix& features, int r,
                                     int eigenvalue_cap = kDefaultEigenvalueCap);

/// 2 * sum_{j > r} lambda_j, evaluated as 2 (||A||_F^2 - sum_{j <= r} lambda_j).
[[nodiscard]] double fidelity_error_bound(const PcaModel& model, int r);

/// Smallest k >= 1 with (1/n) sum_{j > k} lambda_j < omega; falls back to
/// the number of retained eigenvalues.
[[nodiscard]] int estimate_segment_count(const PcaModel& model, Eigen::Index n, double omega);

}  // namespace mpseg
