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
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mpseg/features.hpp"
#include "mpseg/initialization.hpp"
#include "mpseg/pca.hpp"
#include "mpseg/primal_dual.hpp"

namespace mpseg {

enum class FeatureKind { kSpectralHistogram, kFftModulus };

/// Which local feature extractor to run and at which window scales.
struct FeatureSpec {
  FeatureKind kind = FeatureKind::kFftModulus;
  /// (half-width s, weight) per scale; several scales are stacked.
  std::vector<std::pair<int, double>> scales{{15, 1.0}};
  FilterBank bank;  // spectral histograms only
  Padding padding = Padding::kMirror;

  [[nodiscard]] int primary_half_width() const { return scales.empty() ? 0 : scales.front().first; }

  /// FFT modulus at s = 15.
  static FeatureSpec crystal(int s = 15);
  /// Intensity + Gabor(5,7,9 x 0,pi/2,pi/4,-pi/4) histograms, 11 bins,
  /// s = 15 and 30 stacked with weights 0.8 and 0.2.
  static FeatureSpec texture();
};

struct SegmentationConfig {
  /// Segment count; 0 requests estimation from the eigenvalue tail.
  int k = 2;
  double omega = 0.05;
  double lambda = 25.0;
  double delta = 1.0;
  int outer_iterations = 3;
  SolverParams solver;  // solver.lambda is overwritten by `lambda`
  FeatureSpec features;
  std::uint64_t seed = 0;
  KMeansOptions kmeans;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct OuterRound {
  int inner_iterations = 0;
  bool converged = false;
  double relaxed_energy = 0.0;          // after the solve, with this round's indicator
  double fidelity_before_update = 0.0;  // sum f u with the old means
  double fidelity_after_update = 0.0;   // sum f u with the refreshed means
  std::vector<int> empty_labels;        // labels whose means were kept
};

struct SegmentationDiagnostics {
  Eigen::Index feature_dimension = 0;
  Eigen::Index feature_pixels = 0;
  int margin = 0;
  int k = 0;
  std::optional<int> estimated_k;
  std::size_t clustered_points = 0;
  bool selection_fallback = false;
  double kmeans_inertia = 0.0;
  double pca_tail = 0.0;  // ||A||_F^2 - sum_{j<=k} lambda_j
  std::vector<OuterRound> rounds;
  /// Mean refresh never increased sum_li f_li u_li (checked every round).
  bool mean_update_monotone = true;
  std::vector<std::string> warnings;
};

struct SegmentationResult {
  GridExtent extent;         // full image extent
  std::vector<int> mask;     // labels 1..k on `extent`
  LabelField soft;           // on the feature grid
  Eigen::MatrixXd means_coeff;    // r x k
  Eigen::MatrixXd means_feature;  // m x k
  std::vector<double> energy_trace;
  SegmentationDiagnostics diagnostics;

  [[nodiscard]] int labels() const { return soft.labels(); }
};

/// f_li = |alpha_i - gamma_l|^2.
[[nodiscard]] IndicatorField indicator_from_coefficients(const CoefficientField& alpha, const Eigen::MatrixXd& gamma);

/// gamma_l = sum_i alpha_i u_li / sum_i u_li. Labels with zero total weight
/// keep their entry from `previous` and are reported in `empty_labels`.
[[nodiscard]] Eigen::MatrixXd update_means(const CoefficientField& alpha, const LabelField& u,
                                           const Eigen::MatrixXd& previous,
                                           std::vector<int>* empty_labels = nullptr);

/// Runs the configured feature extractor(s).
[[nodiscard]] FeatureMatrix compute_features(const ImageGrid& image, const FeatureSpec& spec);

/// Outer loop from given initial means: indicator, warm-started solve, mean
/// refresh, repeated config.outer_iterations times. Returns the state on the
/// coefficient grid (mask equals argmax of soft, no margin extension).
[[nodiscard]] SegmentationResult refine_segmentation(const CoefficientField& alpha, const Eigen::MatrixXd& initial_means,
                                                     const SegmentationConfig& config);

/// Feature matrix -> PCA -> edgeness-filtered k-means -> outer loop -> mask
/// extended over the feature margin to `image_extent`.
[[nodiscard]] SegmentationResult segment_features(const FeatureMatrix& features, GridExtent image_extent,
                                                  const SegmentationConfig& config);

/// Full pipeline on an image.
[[nodiscard]] SegmentationResult segment(const ImageGrid& image, const SegmentationConfig& config);

/// Mask on the feature grid copied to the full image; pixels in the margin
/// take the label of the nearest interior pixel.
[[nodiscard]] std::vector<int> extend_mask(const std::vector<int>& interior, GridExtent interior_extent, int margin,
                                           GridExtent full_extent);

}  // namespace mpseg
