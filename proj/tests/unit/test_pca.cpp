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

#include <gtest/gtest.h>

#include <random>

#include "mpseg/pca.hpp"
#include "mpseg/verify/oracles.hpp"
#include "test_support.hpp"

namespace mpseg {
namespace {

PcaModel spectrum(std::initializer_list<double> values) {
  PcaModel m;
  m.eigenvalues = Eigen::Map<const Eigen::VectorXd>(values.begin(), static_cast<Eigen::Index>(values.size()));
  m.frobenius_sq = m.eigenvalues.sum();
  return m;
}

FeatureMatrix features_from(Eigen::MatrixXd values) {
  FeatureMatrix f;
  f.extent = GridExtent{static_cast<int>(values.cols()), 1};
  f.values = std::move(values);
  return f;
}

// Columns with decaying row scales so the spectrum is spread out.
Eigen::MatrixXd spread(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  Eigen::MatrixXd x = testing::random_matrix(m, n, seed);
  for (Eigen::Index i = 0; i < m; ++i) x.row(i) *= 1.0 / (1.0 + i);
  return x;
}

TEST(SegmentCount, SmallSpectra) {
  EXPECT_EQ(estimate_segment_count(spectrum({4.0, 1.0}), 1, 0.5), 2);
  EXPECT_EQ(estimate_segment_count(spectrum({400.0, 90.0, 8.0, 2.0}), 100, 0.05), 3);
  EXPECT_EQ(estimate_segment_count(spectrum({400.0, 90.0, 8.0, 2.0}), 100, 2.0), 1);
}

TEST(SegmentCount, RejectsBadArguments) {
  EXPECT_THROW((void)estimate_segment_count(spectrum({1.0}), 1, 0.0), std::invalid_argument);
  EXPECT_THROW((void)estimate_segment_count(spectrum({1.0}), 0, 0.1), std::invalid_argument);
}

TEST(Pca, TailIsFrobeniusMinusLeadingEigenvalues) {
  const PcaModel m = spectrum({5.0, 3.0, 1.0});
  EXPECT_DOUBLE_EQ(m.eigenvalue_tail(0), 9.0);
  EXPECT_DOUBLE_EQ(m.eigenvalue_tail(1), 4.0);
  EXPECT_DOUBLE_EQ(m.eigenvalue_tail(3), 0.0);
  EXPECT_DOUBLE_EQ(fidelity_error_bound(m, 1), 8.0);
}

TEST(Pca, BasisIsOrthonormalAndSpectrumSorted) {
  for (auto [m, n] : {std::pair<Eigen::Index, Eigen::Index>{12, 200}, {40, 25}}) {
    const PcaModel model = fit_pca_model(features_from(spread(m, n, 3)), 6);
    EXPECT_LE((model.basis.transpose() * model.basis - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff(),
              1e-10);
    for (Eigen::Index j = 1; j < model.eigenvalues.size(); ++j)
      EXPECT_LE(model.eigenvalues(j), model.eigenvalues(j - 1));
    EXPECT_GE(model.eigenvalues.minCoeff(), 0.0);
  }
}

TEST(Pca, TailMatchesSingularValues) {
  const Eigen::MatrixXd x = spread(10, 300, 4);
  const PcaModel model = fit_pca_model(features_from(x), 3);
  const Eigen::MatrixXd centred = x.colwise() - x.rowwise().mean();
  for (int r : {1, 3, 5, 10}) {
    EXPECT_NEAR(model.eigenvalue_tail(r), verify::svd_tail(centred, r), 1e-9 * model.frobenius_sq);
  }
}

TEST(Pca, ReconstructionErrorEqualsTail) {
  const Eigen::MatrixXd x = spread(8, 120, 5);
  const auto [model, coeffs] = fit_pca(features_from(x), 4);
  const double err = (model.reconstruct(coeffs.alpha) - x).squaredNorm();
  EXPECT_NEAR(err, model.eigenvalue_tail(4), 1e-9 * model.frobenius_sq);
}

TEST(Pca, FullRankPreservesDistances) {
  const Eigen::MatrixXd x = spread(6, 50, 6);
  const auto [model, coeffs] = fit_pca(features_from(x), 6);
  for (Eigen::Index i = 1; i < 50; ++i) {
    EXPECT_NEAR((coeffs.alpha.col(i) - coeffs.alpha.col(0)).squaredNorm(), (x.col(i) - x.col(0)).squaredNorm(),
                1e-10);
  }
}

TEST(Pca, TruncationKeepsLeadingColumns) {
  const PcaModel model = fit_pca_model(features_from(spread(9, 80, 7)), 5);
  const PcaModel small = model.truncated(2);
  EXPECT_EQ(small.rank(), 2);
  EXPECT_EQ(small.basis, model.basis.leftCols(2));
  EXPECT_THROW((void)model.truncated(6), std::invalid_argument);
  EXPECT_THROW((void)model.truncated(0), std::invalid_argument);
}

TEST(Pca, EigenvalueCapLimitsRetainedSpectrum) {
  const PcaModel model = fit_pca_model(features_from(spread(30, 100, 8)), 2, 10);
  EXPECT_EQ(model.eigenvalues.size(), 10);
  EXPECT_GT(model.eigenvalue_tail(10), 0.0);
}

TEST(Pca, RejectsBadRankAndNonFinite) {
  Eigen::MatrixXd x = spread(4, 10, 9);
  EXPECT_THROW((void)fit_pca_model(features_from(x), 0), std::invalid_argument);
  EXPECT_THROW((void)fit_pca_model(features_from(x), 5), std::invalid_argument);
  x(1, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW((void)fit_pca_model(features_from(x), 2), std::invalid_argument);
}

TEST(Pca, DeterministicSigns) {
  const FeatureMatrix f = features_from(spread(7, 60, 10));
  EXPECT_EQ(fit_pca_model(f, 3).basis, fit_pca_model(f, 3).basis);
}

TEST(Pca, TwoDistinctVectorsLieOnALine) {
  Eigen::MatrixXd x(4, 10);
  for (int i = 0; i < 10; ++i) x.col(i) = i % 2 == 0 ? Eigen::Vector4d(1, 2, 3, 4) : Eigen::Vector4d(-1, 0, 5, 2);
  const auto [model, coeffs] = fit_pca(features_from(x), 1);
  EXPECT_NEAR(model.eigenvalues.tail(model.eigenvalues.size() - 1).cwiseAbs().maxCoeff(), 0.0, 1e-10);
  EXPECT_LE((model.reconstruct(coeffs.alpha) - x).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Pca, TraceIdentityOnRandomMatrices) {
  for (std::uint64_t seed = 20; seed < 25; ++seed) {
    const PcaModel model = fit_pca_model(features_from(testing::random_matrix(20, 50, seed)), 1);
    EXPECT_NEAR(model.eigenvalues.sum(), model.frobenius_sq, 1e-8 * model.frobenius_sq);
  }
}

TEST(Pca, ReconstructionErrorForEveryRank) {
  const Eigen::MatrixXd x = testing::random_matrix(10, 40, 30);
  for (int r = 1; r <= 10; ++r) {
    const auto [model, coeffs] = fit_pca(features_from(x), r);
    const double err = (model.reconstruct(coeffs.alpha) - x).squaredNorm();
    EXPECT_NEAR(err, model.eigenvalue_tail(r), 1e-8 * model.frobenius_sq) << "r = " << r;
  }
}

TEST(FidelityBound, Examples) {
  EXPECT_DOUBLE_EQ(fidelity_error_bound(spectrum({4.0, 1.0}), 1), 2.0);
  EXPECT_DOUBLE_EQ(fidelity_error_bound(spectrum({4.0, 1.0}), 2), 0.0);
  EXPECT_THROW((void)fidelity_error_bound(spectrum({1.0}), -1), std::invalid_argument);
}

TEST(FidelityBound, HoldsForRandomPixelsAndMeans) {
  const Eigen::MatrixXd x = spread(12, 60, 31);
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<int> pick(0, 59);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int r = 1; r <= 12; ++r) {
    const auto [model, coeffs] = fit_pca(features_from(x), r);
    const double bound = fidelity_error_bound(model, r);
    for (int trial = 0; trial < 20; ++trial) {
      const int i = pick(rng);
      // A mean of features: convex combination of two columns.
      const double t = unit(rng);
      const Eigen::VectorXd mean = t * x.col(pick(rng)) + (1.0 - t) * x.col(pick(rng));
      const double exact = (x.col(i) - mean).squaredNorm();
      const Eigen::VectorXd gamma = model.basis.transpose() * (mean - model.mean);
      const double reduced = (coeffs.alpha.col(i) - gamma).squaredNorm();
      EXPECT_LE(std::abs(exact - reduced), bound + 1e-9 * model.frobenius_sq);
    }
  }
}

TEST(SegmentCount, AllZeroSpectrumGivesOne) {
  EXPECT_EQ(estimate_segment_count(spectrum({0.0, 0.0, 0.0}), 10, 0.05), 1);
}

TEST(SegmentCount, NotScaleInvariant) {
  const Eigen::MatrixXd x = spread(8, 200, 33);
  const PcaModel base = fit_pca_model(features_from(x), 8);
  const PcaModel scaled = fit_pca_model(features_from(3.0 * x), 8);
  EXPECT_LE((scaled.eigenvalues - 9.0 * base.eigenvalues).cwiseAbs().maxCoeff(), 1e-9 * scaled.eigenvalues(0));
  // Pick omega between the two tails at r = 2 so the estimate moves.
  const double omega = 0.5 * (base.eigenvalue_tail(2) + scaled.eigenvalue_tail(2)) / 200.0;
  EXPECT_LT(estimate_segment_count(base, 200, omega), estimate_segment_count(scaled, 200, omega));
}

}  // namespace
}  // namespace mpseg
