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

#include "mpseg/metrics.hpp"
#include "mpseg/verify/oracles.hpp"

namespace mpseg {
namespace {

SegMask mask(int w, int h, std::vector<int> labels) { return SegMask{GridExtent{w, h}, std::move(labels)}; }

TEST(Metrics, PermutedLabelsScorePerfectly) {
  const SegMask truth = mask(4, 1, {1, 1, 2, 3});
  const SegMask pred = mask(4, 1, {3, 3, 1, 2});
  EXPECT_EQ(pixel_accuracy(pred, truth), 1.0);
  EXPECT_EQ(match_labels(pred, truth), (std::vector<int>{2, 3, 1}));
  EXPECT_EQ(correct_segmentation_rate(pred, truth), 1.0);
  EXPECT_EQ(disagreement(pred, truth), 0.0);
}

TEST(Metrics, ConfusionMatrixCounts) {
  const auto c = confusion_matrix(mask(4, 1, {1, 1, 2, 2}), mask(4, 1, {1, 2, 2, 2}));
  EXPECT_EQ(c, (std::vector<std::vector<std::int64_t>>{{1, 1}, {0, 2}}));
}

TEST(Metrics, ExtraPredictedLabelStaysUnmatched) {
  const SegMask truth = mask(6, 1, {1, 1, 1, 2, 2, 2});
  const SegMask pred = mask(6, 1, {1, 1, 3, 2, 2, 2});
  EXPECT_NEAR(pixel_accuracy(pred, truth), 5.0 / 6.0, 1e-15);
  EXPECT_EQ(match_labels(pred, truth)[2], 0);
}

TEST(Metrics, AccuracyMatchesBruteForceMatching) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const int kp = 2 + trial % 4;
    const int kt = 2 + (trial / 4) % 4;
    std::uniform_int_distribution<int> lp(1, kp), lt(1, kt);
    SegMask pred = mask(7, 5, std::vector<int>(35));
    SegMask truth = mask(7, 5, std::vector<int>(35));
    for (int i = 0; i < 35; ++i) {
      truth.labels[i] = lt(rng);
      pred.labels[i] = trial % 2 == 0 ? lp(rng) : (truth.labels[i] - 1) % kp + 1;
    }
    if (pred.label_count() < 1 || truth.label_count() < 1) continue;
    EXPECT_NEAR(pixel_accuracy(pred, truth),
                static_cast<double>(verify::best_matching_overlap(pred, truth)) / 35.0, 1e-15);
  }
}

TEST(Metrics, CorrectSegmentationNeedsMutualOverlap) {
  const SegMask truth = mask(8, 1, {1, 1, 1, 1, 2, 2, 2, 2});
  const SegMask pred = mask(8, 1, {1, 1, 1, 2, 2, 2, 2, 2});
  EXPECT_EQ(correct_segmentation_rate(pred, truth, 0.8), 0.5);
  EXPECT_EQ(correct_segmentation_rate(pred, truth, 0.75), 1.0);
}

TEST(Metrics, BoundaryPixels) {
  const SegMask m = mask(4, 2, {1, 1, 2, 2, 1, 1, 2, 2});
  EXPECT_EQ(boundary_pixels(m), (std::vector<std::size_t>{1, 2, 5, 6}));
  EXPECT_TRUE(boundary_pixels(mask(3, 1, {1, 1, 1})).empty());
}

TEST(Metrics, BoundaryDeviation) {
  std::vector<int> t(100), p(100);
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 10; ++x) {
      t[y * 10 + x] = x < 5 ? 1 : 2;
      p[y * 10 + x] = x < 8 ? 1 : 2;
    }
  EXPECT_EQ(max_boundary_deviation(mask(10, 10, p), mask(10, 10, t)), 3.0);
  EXPECT_EQ(max_boundary_deviation(mask(10, 10, t), mask(10, 10, t)), 0.0);
}

TEST(Metrics, RejectsInvalidMasks) {
  EXPECT_THROW((void)pixel_accuracy(mask(2, 1, {1, 0}), mask(2, 1, {1, 1})), std::invalid_argument);
  EXPECT_THROW((void)pixel_accuracy(mask(2, 1, {1, 1}), mask(1, 2, {1, 1})), std::invalid_argument);
  EXPECT_THROW((void)pixel_accuracy(mask(2, 1, {1}), mask(2, 1, {1, 1})), std::invalid_argument);
}

TEST(Metrics, IdentityAndSwapMappings) {
  const SegMask truth = mask(4, 1, {1, 2, 2, 1});
  EXPECT_EQ(match_labels(truth, truth), (std::vector<int>{1, 2}));
  const SegMask swapped = mask(4, 1, {2, 1, 1, 2});
  EXPECT_EQ(match_labels(swapped, truth), (std::vector<int>{2, 1}));
  EXPECT_EQ(pixel_accuracy(swapped, truth), 1.0);
}

TEST(Metrics, OneWrongPixelOfHundred) {
  std::vector<int> t(100, 1), p(100, 1);
  for (int i = 50; i < 100; ++i) t[i] = p[i] = 2;
  p[10] = 2;
  EXPECT_DOUBLE_EQ(pixel_accuracy(mask(10, 10, p), mask(10, 10, t)), 0.99);
}

TEST(Metrics, MissingRegionCostsAQuarter) {
  // Region 4 is one pixel absorbed by the much larger region 3.
  const SegMask truth = mask(10, 1, {1, 1, 2, 2, 3, 3, 3, 3, 3, 4});
  const SegMask pred = mask(10, 1, {1, 1, 2, 2, 3, 3, 3, 3, 3, 3});
  EXPECT_EQ(correct_segmentation_rate(truth, truth), 1.0);
  EXPECT_EQ(correct_segmentation_rate(pred, truth), 0.75);
}

TEST(Metrics, PerClassAccuracy) {
  const SegMask truth = mask(6, 1, {1, 1, 1, 2, 2, 2});
  const SegMask pred = mask(6, 1, {2, 2, 1, 1, 1, 1});
  const auto acc = per_class_accuracy(pred, truth);
  ASSERT_EQ(acc.size(), 2u);
  EXPECT_NEAR(acc[0], 2.0 / 3.0, 1e-15);
  EXPECT_EQ(acc[1], 1.0);
  EXPECT_EQ(per_class_accuracy(truth, truth), (std::vector<double>{1.0, 1.0}));
}

TEST(Metrics, TiesMatchLowestIndexPair) {
  const SegMask truth = mask(4, 1, {1, 1, 2, 2});
  EXPECT_EQ(match_labels(mask(4, 1, {1, 1, 1, 1}), truth), (std::vector<int>{1}));
  EXPECT_EQ(match_labels(mask(4, 1, {1, 2, 1, 2}), truth), (std::vector<int>{1, 2}));
  EXPECT_EQ(match_labels(mask(4, 1, {1, 1, 2, 2}), mask(4, 1, {1, 1, 1, 1})), (std::vector<int>{1, 0}));
}

}  // namespace
}  // namespace mpseg
