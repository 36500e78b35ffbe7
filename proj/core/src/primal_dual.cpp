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

#include "mpseg/primal_dual.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpseg/grid_ops.hpp"
#include "mpseg/simplex.hpp"

namespace mpseg {
namespace {

std::span<const double> column(const Eigen::MatrixXd& m, Eigen::Index l) {
  return {m.col(l).data(), static_cast<std::size_t>(m.rows())};
}

std::span<double> column(Eigen::MatrixXd& m, Eigen::Index l) {
  return {m.col(l).data(), static_cast<std::size_t>(m.rows())};
}

void require_shape(const Eigen::MatrixXd& m, GridExtent extent, Eigen::Index k, const char* what) {
  if (static_cast<std::size_t>(m.rows()) != extent.size() || m.cols() != k) {
    throw std::invalid_argument(std::string(what) + ": shape does not match (pixels x labels)");
  }
}

}  // namespace

LabelField::LabelField(GridExtent e, int k) : extent(e), u(Eigen::MatrixXd::Zero(e.size(), k)) {
  if (k < 1) throw std::invalid_argument("LabelField: k must be >= 1");
}

LabelField LabelField::uniform(GridExtent e, int k) {
  LabelField field(e, k);
  field.u.setConstant(1.0 / k);
  return field;
}

std::vector<int> LabelField::hard_labels() const {
  std::vector<int> labels(pixels());
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    int best = 0;
    for (Eigen::Index l = 1; l < u.cols(); ++l)
      if (u(i, l) > u(i, best)) best = static_cast<int>(l);
    labels[i] = best;
  }
  return labels;
}

double LabelField::simplex_violation() const {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    worst = std::max(worst, std::abs(u.row(i).sum() - 1.0));
    worst = std::max(worst, -u.row(i).minCoeff());
  }
  return worst;
}

DualField::DualField(GridExtent e, int k)
    : extent(e), px(Eigen::MatrixXd::Zero(e.size(), k)), py(Eigen::MatrixXd::Zero(e.size(), k)) {}

double DualField::max_norm() const {
  if (px.size() == 0) return 0.0;
  return (px.array().square() + py.array().square()).sqrt().maxCoeff();
}

void SolverParams::validate() const {
  auto fail = [](const char* msg) { throw std::invalid_argument(std::string("SolverParams: ") + msg); };
  if (!(sigma > 0.0)) fail("sigma must be > 0");
  if (!(tau > 0.0)) fail("tau must be > 0");
  if (sigma * tau * kGradientNormSquaredBound > 1.0 + 1e-12) fail("sigma * tau * 8 must be <= 1");
  if (!(theta >= 0.0 && theta <= 1.0)) fail("theta must lie in [0, 1]");
  if (!(epsilon > 0.0)) fail("epsilon must be > 0");
  if (max_iterations < 1) fail("max_iterations must be >= 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) fail("lambda must be > 0");
}

void resolvent_dual(DualField& p) {
  auto x = p.px.reshaped();
  auto y = p.py.reshaped();
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double norm = std::sqrt(x[j] * x[j] + y[j] * y[j]);
    if (norm > 1.0) {
      x[j] /= norm;
      y[j] /= norm;
    }
  }
}

void resolvent_primal(LabelField& u, const IndicatorField& f, double tau, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("resolvent_primal: lambda must be > 0");
  require_shape(f.f, u.extent, u.u.cols(), "resolvent_primal");
  const double step = tau / lambda;
  const Eigen::Index n = u.u.rows();
  const Eigen::Index k = u.u.cols();
  std::vector<double> row(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index l = 0; l < k; ++l) row[l] = u.u(i, l) - step * f.f(i, l);
    project_simplex_inplace(row);
    for (Eigen::Index l = 0; l < k; ++l) u.u(i, l) = row[l];
  }
}

double fidelity_energy(const IndicatorField& f, const LabelField& u) {
  require_shape(f.f, u.extent, u.u.cols(), "fidelity_energy");
  return f.f.cwiseProduct(u.u).sum();
}

double relaxed_energy(const IndicatorField& f, const LabelField& u, double lambda) {
  double tv = 0.0;
  for (Eigen::Index l = 0; l < u.u.cols(); ++l) tv += total_variation(u.extent, column(u.u, l));
  return fidelity_energy(f, u) + lambda * tv;
}

SolveResult solve(const IndicatorField& f, const LabelField& u0, const DualField& p0,
                  const SolverParams& params) {
  params.validate();
  const GridExtent extent = u0.extent;
  const Eigen::Index k = u0.u.cols();
  const Eigen::Index n = static_cast<Eigen::Index>(extent.size());
  require_shape(u0.u, extent, k, "solve(u0)");
  require_shape(f.f, extent, k, "solve(f)");
  require_shape(p0.px, extent, k, "solve(p0)");
  require_shape(p0.py, extent, k, "solve(p0)");
  if (!f.f.allFinite()) throw NumericalError("solve: indicator contains non-finite values");
  if (!u0.u.allFinite() || !p0.px.allFinite() || !p0.py.allFinite()) {
    throw NumericalError("solve: warm start contains non-finite values");
  }

  SolveResult result;
  result.u = u0;
  result.p = p0;
  Eigen::MatrixXd& u_hat = result.u.u;
  Eigen::MatrixXd u_bar = u_hat;
  Eigen::MatrixXd u_prev(n, k);
  DualField& p = result.p;

  std::vector<double> gx(extent.size());
  std::vector<double> gy(extent.size());
  std::vector<double> div(extent.size());
  const double step = params.tau / params.lambda;
  std::vector<double> row(static_cast<std::size_t>(k));

  int passes = 0;
  for (;;) {
    // Dual ascent on the extrapolated primal point.
    for (Eigen::Index l = 0; l < k; ++l) {
      gradient(extent, column(u_bar, l), gx, gy);
      auto pxl = p.px.col(l);
      auto pyl = p.py.col(l);
      for (Eigen::Index i = 0; i < n; ++i) {
        double ax = pxl[i] + params.sigma * gx[i];
        double ay = pyl[i] + params.sigma * gy[i];
        const double norm = std::sqrt(ax * ax + ay * ay);
        if (norm > 1.0) {
          ax /= norm;
          ay /= norm;
        }
        pxl[i] = ax;
        pyl[i] = ay;
      }
    }

    // Primal descent: u_hat - tau K^T p = u_hat + tau div p, then the data
    // term and the simplex projection.
    u_prev = u_hat;
    for (Eigen::Index l = 0; l < k; ++l) {
      divergence(extent, column(p.px, l), column(p.py, l), div);
      auto ul = u_hat.col(l);
      const auto fl = f.f.col(l);
      for (Eigen::Index i = 0; i < n; ++i) ul[i] += params.tau * div[i] - step * fl[i];
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index l = 0; l < k; ++l) row[l] = u_hat(i, l);
      project_simplex_inplace(row);
      for (Eigen::Index l = 0; l < k; ++l) u_hat(i, l) = row[l];
    }

    double change_sq = 0.0;
    for (Eigen::Index l = 0; l < k; ++l) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const double d = u_hat(i, l) - u_prev(i, l);
        change_sq += d * d;
        u_bar(i, l) = u_hat(i, l) + params.theta * d;
      }
    }
    ++passes;
    const double change = std::sqrt(change_sq / static_cast<double>(n * k));
    if (!std::isfinite(change)) {
      throw NumericalError("solve: non-finite primal iterate after " + std::to_string(passes) +
                           " iterations (check indicator scaling against lambda)");
    }
    result.last_change = change;
    if (change < params.epsilon) {
      result.converged = true;
      break;
    }
    if (passes > params.max_iterations) break;
  }
  result.iterations = passes;
  return result;
}

SolveResult solve(const IndicatorField& f, const SolverParams& params) {
  const int k = static_cast<int>(f.f.cols());
  return solve(f, LabelField::uniform(f.extent, k), DualField(f.extent, k), params);
}

}  // namespace mpseg
