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

#include <cmath>
#include <numbers>

#include "mpseg/features.hpp"
#include "mpseg/synth.hpp"
#include "mpseg/verify/oracles.hpp"
#include "test_support.hpp"

namespace mpseg {
namespace {

constexpr double kPi = std::numbers::pi;

ImageGrid stripes(int w, int h, double period, double orientation) {
  ImageGrid img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      img.at(x, y) = std::cos(2.0 * kPi * (std::cos(orientation) * x + std::sin(orientation) * y) / period);
  return img;
}

TEST(HistogramBin, EdgesAndClamping) {
  EXPECT_EQ(histogram_bin(0.0, 0.0, 1.0, 4), 0);
  EXPECT_EQ(histogram_bin(0.25, 0.0, 1.0, 4), 1);
  EXPECT_EQ(histogram_bin(1.0, 0.0, 1.0, 4), 3);
  EXPECT_EQ(histogram_bin(-3.0, 0.0, 1.0, 4), 0);
  EXPECT_EQ(histogram_bin(0.5, 2.0, 2.0, 4), 3);
}

TEST(SpectralHistogram, ConstantImageFillsLastBin) {
  FilterBank bank{{Filter::intensity()}, 4};
  const FeatureMatrix h = spectral_histogram(ImageGrid(9, 9, 1, 3.0), bank, WindowSpec{2});
  ASSERT_EQ(h.dimension(), 4);
  for (Eigen::Index i = 0; i < h.pixels(); ++i) {
    EXPECT_EQ(h.values(0, i), 0.0);
    EXPECT_EQ(h.values(3, i), 1.0);
  }
  EXPECT_EQ(h.warnings.size(), 1u);
}

TEST(SpectralHistogram, BinaryStripesGiveWindowFractions) {
  ImageGrid img(8, 8);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) img.at(x, y) = x % 2;
  FilterBank bank{{Filter::intensity()}, 2};
  const FeatureMatrix h = spectral_histogram(img, bank, WindowSpec{1});
  EXPECT_NEAR(h.values(0, static_cast<Eigen::Index>(img.extent().index(2, 3))), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(h.values(1, static_cast<Eigen::Index>(img.extent().index(2, 3))), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(h.values(0, static_cast<Eigen::Index>(img.extent().index(3, 3))), 2.0 / 3.0, 1e-15);
}

TEST(SpectralHistogram, EachFilterBlockSumsToOne) {
  const ImageGrid img = testing::random_image(20, 17, 5);
  const FilterBank bank = FilterBank::gabor_bank({5.0}, {0.0, kPi / 2}, 6, true);
  const FeatureMatrix h = spectral_histogram(img, bank, WindowSpec{3});
  ASSERT_EQ(h.dimension(), 18);
  EXPECT_EQ(h.margin, 0);
  for (Eigen::Index i = 0; i < h.pixels(); ++i)
    for (int f = 0; f < 3; ++f) EXPECT_NEAR(h.values.block(f * 6, i, 6, 1).sum(), 1.0, 1e-12);
}

TEST(SpectralHistogram, MirrorAndClampDifferOnlyNearBorder) {
  const ImageGrid img = testing::random_image(16, 16, 6);
  FilterBank bank{{Filter::intensity()}, 5};
  const FeatureMatrix a = spectral_histogram(img, bank, WindowSpec{2, Padding::kMirror});
  const FeatureMatrix b = spectral_histogram(img, bank, WindowSpec{2, Padding::kClamp});
  for (int y = 2; y < 14; ++y)
    for (int x = 2; x < 14; ++x) {
      const auto i = static_cast<Eigen::Index>(img.extent().index(x, y));
      EXPECT_EQ(a.values.col(i), b.values.col(i));
    }
  EXPECT_NE(a.values, b.values);
}

TEST(SpectralHistogram, RejectsBadInput) {
  FilterBank bank{{Filter::intensity()}, 4};
  EXPECT_THROW((void)spectral_histogram(ImageGrid(5, 5), bank, WindowSpec{3}), std::invalid_argument);
  EXPECT_THROW((void)spectral_histogram(ImageGrid(5, 5), FilterBank{{}, 4}, WindowSpec{1}), std::invalid_argument);
  EXPECT_THROW((void)spectral_histogram(ImageGrid(5, 5), FilterBank{{Filter::intensity()}, 0}, WindowSpec{1}),
               std::invalid_argument);
}

TEST(Gabor, MatchesDirectConvolution) {
  const ImageGrid img = testing::random_image(24, 22, 7);
  for (double size : {5.0, 7.0}) {
    for (double theta : {0.0, kPi / 2, kPi / 4, -kPi / 4}) {
      const ImageGrid out = apply_filter(img, Filter::gabor(size, theta));
      for (auto [x, y] : {std::pair{0, 0}, std::pair{11, 10}, std::pair{23, 5}, std::pair{3, 21}}) {
        EXPECT_NEAR(out.at(x, y), verify::gabor_magnitude_direct(img, size, theta, x, y), 1e-10);
      }
    }
  }
}

TEST(Gabor, RespondsToMatchingOrientation) {
  const ImageGrid img = stripes(48, 48, 7.0, 0.0);
  const double along = apply_filter(img, Filter::gabor(7.0, 0.0)).at(24, 24);
  const double across = apply_filter(img, Filter::gabor(7.0, kPi / 2)).at(24, 24);
  EXPECT_GT(along, 5.0 * across);
}

TEST(Gabor, MeanEnergyFavoursMatchingOrientation) {
  for (double size : {5.0, 7.0, 9.0}) {
    const ImageGrid img = stripes(64, 64, size, 0.0);
    auto energy = [&](double theta) {
      const ImageGrid out = apply_filter(img, Filter::gabor(size, theta));
      double e = 0.0;
      for (double v : out.values()) e += v * v;
      return e / static_cast<double>(out.pixel_count());
    };
    EXPECT_GT(energy(0.0), 5.0 * energy(kPi / 2)) << "size " << size;
  }
}

TEST(Gabor, ConstantImageHasNoResponse) {
  const ImageGrid out = apply_filter(ImageGrid(20, 20, 1, 9.0), Filter::gabor(5.0, 0.3));
  for (double v : out.values()) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Gabor, RequiresPositiveSize) {
  EXPECT_THROW((void)apply_filter(ImageGrid(8, 8), Filter::gabor(0.0, 0.0)), std::invalid_argument);
}

TEST(FftModulus, MatchesDirectDft) {
  const ImageGrid img = testing::random_image(15, 13, 8);
  const FeatureMatrix m = fft_modulus(img, WindowSpec{2});
  EXPECT_EQ(m.margin, 2);
  EXPECT_EQ(m.extent, (GridExtent{11, 9}));
  for (auto [cx, cy] : {std::pair{0, 0}, std::pair{5, 4}, std::pair{10, 8}}) {
    const Eigen::VectorXd direct = verify::dft_modulus_direct(img, cx, cy, 5);
    const Eigen::VectorXd got = m.values.col(static_cast<Eigen::Index>(m.extent.index(cx, cy)));
    EXPECT_LE((got - direct).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(FftModulus, DcAndSingleCosine) {
  const int side = 9;
  ImageGrid img(side, side);
  for (int y = 0; y < side; ++y)
    for (int x = 0; x < side; ++x) img.at(x, y) = 2.0 + std::cos(2.0 * kPi * 2.0 * x / side);
  const FeatureMatrix m = fft_modulus(img, WindowSpec{4});
  ASSERT_EQ(m.pixels(), 1);
  const Eigen::VectorXd col = m.values.col(0);
  EXPECT_NEAR(col(0), 2.0 * side * side, 1e-9);
  EXPECT_NEAR(col(2), side * side / 2.0, 1e-9);
  EXPECT_NEAR(col(side - 2), side * side / 2.0, 1e-9);
  double rest = 0.0;
  for (Eigen::Index j = 0; j < col.size(); ++j)
    if (j != 0 && j != 2 && j != side - 2) rest = std::max(rest, col(j));
  EXPECT_LT(rest, 1e-9);
}

TEST(FftModulus, InvariantToTranslationByLatticePeriod) {
  const ImageGrid img = stripes(40, 40, 6.0, 0.0);
  const FeatureMatrix m = fft_modulus(img, WindowSpec{5});
  const auto a = m.values.col(static_cast<Eigen::Index>(m.extent.index(3, 4)));
  const auto b = m.values.col(static_cast<Eigen::Index>(m.extent.index(9, 4)));
  const auto c = m.values.col(static_cast<Eigen::Index>(m.extent.index(3, 17)));
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LE((a - c).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(FftModulus, RejectsMultiChannelAndOversizedWindows) {
  EXPECT_THROW((void)fft_modulus(ImageGrid(9, 9, 3), WindowSpec{1}), std::invalid_argument);
  EXPECT_THROW((void)fft_modulus(ImageGrid(9, 9), WindowSpec{5}), std::invalid_argument);
  EXPECT_THROW((void)fft_modulus(ImageGrid(9, 9), WindowSpec{-1}), std::invalid_argument);
}

TEST(StackFeatures, WeightsScaleSquaredDistances) {
  FeatureMatrix a{testing::random_matrix(3, 6, 1), GridExtent{3, 2}, 0, {}};
  FeatureMatrix b{testing::random_matrix(2, 6, 2), GridExtent{3, 2}, 0, {}};
  const FeatureMatrix st = stack_features({{a, 0.5}, {b, 2.0}});
  ASSERT_EQ(st.dimension(), 5);
  for (Eigen::Index i = 1; i < 6; ++i) {
    const double d_stack = (st.values.col(i) - st.values.col(0)).squaredNorm();
    const double d_parts = 0.25 * (a.values.col(i) - a.values.col(0)).squaredNorm() +
                           4.0 * (b.values.col(i) - b.values.col(0)).squaredNorm();
    EXPECT_NEAR(d_stack, d_parts, 1e-12);
  }
}

TEST(StackFeatures, RejectsMismatchedGrids) {
  FeatureMatrix a{Eigen::MatrixXd::Zero(2, 6), GridExtent{3, 2}, 0, {}};
  FeatureMatrix b{Eigen::MatrixXd::Zero(2, 6), GridExtent{2, 3}, 0, {}};
  EXPECT_THROW((void)stack_features({{a, 1.0}, {b, 1.0}}), std::invalid_argument);
  EXPECT_THROW((void)stack_features({{a, 0.0}}), std::invalid_argument);
  EXPECT_THROW((void)stack_features({}), std::invalid_argument);
}

TEST(FftModulus, ConstantWindowIsPureDc) {
  const FeatureMatrix m = fft_modulus(ImageGrid(7, 7, 1, 1.5), WindowSpec{3});
  const Eigen::VectorXd col = m.values.col(0);
  EXPECT_NEAR(col(0), 1.5 * 49, 1e-12);
  EXPECT_LT(col.tail(col.size() - 1).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FftModulus, ThreePeriodCosineHasTwoSymmetricPeaks) {
  const int s = 4;
  const int side = 2 * s + 1;
  ImageGrid img(side, side);
  for (int y = 0; y < side; ++y)
    for (int x = 0; x < side; ++x) img.at(x, y) = std::cos(2.0 * kPi * 3.0 * x / side);
  const Eigen::VectorXd col = fft_modulus(img, WindowSpec{s}).values.col(0);
  int nonzero = 0;
  for (Eigen::Index j = 0; j < col.size(); ++j) nonzero += col(j) > 1e-9 ? 1 : 0;
  EXPECT_EQ(nonzero, 2);
  EXPECT_NEAR(col(3), col(side - 3), 1e-12);
}

TEST(FftModulus, LatticeFeaturesAgreeInsideOneGrain) {
  // Period 5 tiles the 15-pixel window exactly.
  const GrainScene scene{vertical_split(GridExtent{60, 60}, 100), {LatticeSpec::square(5.0)}};
  const ImageGrid img = render_crystal(scene).image;
  const FeatureMatrix m = fft_modulus(img, WindowSpec{7});
  const Eigen::VectorXd ref = m.values.col(static_cast<Eigen::Index>(m.extent.index(10, 10)));
  for (auto [x, y] : {std::pair{11, 10}, std::pair{23, 31}, std::pair{40, 7}}) {
    const Eigen::VectorXd other = m.values.col(static_cast<Eigen::Index>(m.extent.index(x, y)));
    EXPECT_LE((other - ref).norm(), 1e-10 * ref.norm());
  }
}

TEST(StackFeatures, SinglePartWithUnitWeightIsIdentity) {
  FeatureMatrix a{testing::random_matrix(3, 4, 3), GridExtent{2, 2}, 1, {"w"}};
  const FeatureMatrix st = stack_features({{a, 1.0}});
  EXPECT_EQ(st.values, a.values);
  EXPECT_EQ(st.margin, 1);
  EXPECT_EQ(st.warnings, a.warnings);
}

TEST(StackFeatures, BlocksAreScaledInOrder) {
  FeatureMatrix a{testing::random_matrix(2, 4, 4), GridExtent{2, 2}, 0, {}};
  FeatureMatrix b{testing::random_matrix(3, 4, 5), GridExtent{2, 2}, 0, {}};
  const FeatureMatrix st = stack_features({{a, 0.8}, {b, 0.2}});
  ASSERT_EQ(st.dimension(), 5);
  EXPECT_LE((st.values.topRows(2) - 0.8 * a.values).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((st.values.bottomRows(3) - 0.2 * b.values).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SpectralHistogram, OrthogonalSinusoidsSeparate) {
  // Left half waves along x, right half along y, same period.
  ImageGrid img(96, 96);
  for (int y = 0; y < 96; ++y)
    for (int x = 0; x < 96; ++x) img.at(x, y) = std::cos(2.0 * kPi * (x < 48 ? x : y) / 7.0);
  const FilterBank bank = FilterBank::gabor_bank({5.0, 7.0, 9.0}, {0.0, kPi / 2, kPi / 4, -kPi / 4}, 11);
  const FeatureMatrix h = spectral_histogram(img, bank, WindowSpec{10});
  std::vector<Eigen::Index> left, right;
  for (int y = 12; y < 84; ++y)
    for (int x = 12; x < 84; ++x) {
      if (x < 36) left.push_back(static_cast<Eigen::Index>(img.extent().index(x, y)));
      if (x >= 60) right.push_back(static_cast<Eigen::Index>(img.extent().index(x, y)));
    }
  auto mean_of = [&](const std::vector<Eigen::Index>& idx) {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(h.dimension());
    for (auto i : idx) m += h.values.col(i);
    return Eigen::VectorXd(m / static_cast<double>(idx.size()));
  };
  auto spread = [&](const std::vector<Eigen::Index>& idx, const Eigen::VectorXd& m) {
    double s = 0.0;
    for (auto i : idx) s += (h.values.col(i) - m).squaredNorm();
    return std::sqrt(s / static_cast<double>(idx.size()));
  };
  const Eigen::VectorXd ml = mean_of(left);
  const Eigen::VectorXd mr = mean_of(right);
  EXPECT_GT((ml - mr).norm(), 3.0 * std::max(spread(left, ml), spread(right, mr)));
}

}  // namespace
}  // namespace mpseg
