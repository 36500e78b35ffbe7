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

#include "mpseg/pca.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mpseg {
namespace {

constexpr Eigen::Index kBlock = 2048;

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v[arg] < 0.0) v = -v;
}

// Makes column j orthonormal to columns [0, j) using unit vectors as
// candidates; used when the spectrum has an exact null space.
void complete_column(Eigen::MatrixXd& basis, Eigen::Index j) {
  const Eigen::Index m = basis.rows();
  for (Eigen::Index e = 0; e < m; ++e) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(m, e);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index c = 0; c < j; ++c) v -= basis.col(c).dot(v) * basis.col(c);
    const double norm = v.norm();
    if (norm > 1e-6) {
      basis.col(j) = v / norm;
      return;
    }
  }
  throw std::logic_error("fit_pca: could not complete orthonormal basis");
}

}  // namespace

double PcaModel::eigenvalue_tail(int r) const {
  const Eigen::Index count = std::min<Eigen::Index>(r, eigenvalues.size());
  return std::max(0.0, frobenius_sq - eigenvalues.head(count).sum());
}

PcaModel PcaModel::truncated(int r) const {
  if (r < 1 || r > rank()) throw std::invalid_argument("PcaModel::truncated: r out of range");
  PcaModel out = *this;
  out.basis = basis.leftCols(r);
  return out;
}

Eigen::MatrixXd PcaModel::project(const Eigen::MatrixXd& features) const {
  if (features.rows() != mean.size()) throw std::invalid_argument("PcaModel::project: feature dimension mismatch");
  Eigen::MatrixXd alpha(basis.cols(), features.cols());
  for (Eigen::Index start = 0; start < features.cols(); start += kBlock) {
    const Eigen::Index len = std::min(kBlock, features.cols() - start);
    alpha.middleCols(start, len).noalias() =
        basis.transpose() * (features.middleCols(start, len).colwise() - mean);
  }
  return alpha;
}

Eigen::MatrixXd PcaModel::reconstruct(const Eigen::MatrixXd& coefficients) const {
  return (basis * coefficients).colwise() + mean;
}

PcaModel fit_pca_model(const FeatureMatrix& features, int r, int eigenvalue_cap) {
  const Eigen::MatrixXd& X = features.values;
  const Eigen::Index m = X.rows();
  const Eigen::Index n = X.cols();
  const Eigen::Index full = std::min(m, n);
  if (r < 1 || r > full) {
    throw std::invalid_argument("fit_pca: r = " + std::to_string(r) + " outside [1, " + std::to_string(full) + "]");
  }
  if (!X.allFinite()) throw std::invalid_argument("fit_pca: features contain non-finite values");

  PcaModel model;
  model.samples = n;
  model.mean = X.rowwise().mean();
  const Eigen::Index retained = std::min<Eigen::Index>(full, std::max<Eigen::Index>(r, eigenvalue_cap));

  double frob = 0.0;
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // m x retained, descending order
  if (m <= n) {
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index start = 0; start < n; start += kBlock) {
      const Eigen::Index len = std::min(kBlock, n - start);
      const Eigen::MatrixXd block = X.middleCols(start, len).colwise() - model.mean;
      frob += block.squaredNorm();
      gram.selfadjointView<Eigen::Lower>().rankUpdate(block);
    }
    gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success) throw NumericalError("fit_pca: eigendecomposition failed");
    values = solver.eigenvalues().reverse().head(retained);
    vectors = solver.eigenvectors().rowwise().reverse().leftCols(retained);
  } else {
    const Eigen::MatrixXd centered = X.colwise() - model.mean;
    frob = centered.squaredNorm();
    const Eigen::MatrixXd gram = centered.transpose() * centered;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success) throw NumericalError("fit_pca: eigendecomposition failed");
    values = solver.eigenvalues().reverse().head(retained);
    const Eigen::MatrixXd right = solver.eigenvectors().rowwise().reverse().leftCols(retained);
    vectors.resize(m, retained);
    const double floor = 1e-12 * std::max(values.size() > 0 ? values[0] : 0.0, 1e-300);
    for (Eigen::Index j = 0; j < retained; ++j) {
      if (values[j] > floor) {
        vectors.col(j) = centered * right.col(j) / std::sqrt(values[j]);
        vectors.col(j).normalize();
      } else {
        complete_column(vectors, j);
      }
    }
  }

  model.eigenvalues = values.cwiseMax(0.0);
  model.frobenius_sq = frob;
  model.basis = vectors.leftCols(r);
  for (Eigen::Index j = 0; j < model.basis.cols(); ++j) fix_sign(model.basis.col(j));
  return model;
}

std::pair<PcaModel, CoefficientField> fit_pca(const FeatureMatrix& features, int r, int eigenvalue_cap) {
  PcaModel model = fit_pca_model(features, r, eigenvalue_cap);
  CoefficientField coeffs;
  coeffs.extent = features.extent;
  coeffs.alpha = model.project(features.values);
  return {std::move(model), std::move(coeffs)};
}

double fidelity_error_bound(const PcaModel& model, int r) {
  if (r < 0) throw std::invalid_argument("fidelity_error_bound: r must be >= 0");
  return 2.0 * model.eigenvalue_tail(r);
}

int estimate_segment_count(const PcaModel& model, Eigen::Index n, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("estimate_segment_count: omega must be > 0");
  if (n < 1) throw std::invalid_argument("estimate_segment_count: n must be >= 1");
  const int retained = static_cast<int>(model.eigenvalues.size());
  for (int k = 1; k <= retained; ++k) {
    if (model.eigenvalue_tail(k) / static_cast<double>(n) < omega) return k;
  }
  return std::max(retained, 1);
}

}  // namespace mpseg
