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

#include "mpseg/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mpseg {

FeatureSpec FeatureSpec::crystal(int s) {
  FeatureSpec spec;
  spec.kind = FeatureKind::kFftModulus;
  spec.scales = {{s, 1.0}};
  return spec;
}

FeatureSpec FeatureSpec::texture() {
  constexpr double pi = std::numbers::pi;
  FeatureSpec spec;
  spec.kind = FeatureKind::kSpectralHistogram;
  spec.scales = {{15, 0.8}, {30, 0.2}};
  spec.bank = FilterBank::gabor_bank({5.0, 7.0, 9.0}, {0.0, 0.5 * pi, 0.25 * pi, -0.25 * pi}, 11);
  return spec;
}

void SegmentationConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("SegmentationConfig: " + msg); };
  if (k != 0 && k < 2) fail("k must be >= 2 (or 0 to estimate)");
  if (k == 0 && !(omega > 0.0)) fail("omega must be > 0");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) fail("lambda must be > 0");
  if (!(delta > 0.0)) fail("delta must be > 0");
  if (outer_iterations < 1) fail("outer_iterations must be >= 1");
  if (features.scales.empty()) fail("at least one window scale is required");
  for (const auto& [s, w] : features.scales) {
    if (s < 1) fail("window half-width s must be >= 1");
    if (!(w > 0.0)) fail("scale weights must be > 0");
  }
  if (features.kind == FeatureKind::kFftModulus && features.scales.size() != 1) {
    fail("fft-mod features use a single window scale");
  }
  if (features.kind == FeatureKind::kSpectralHistogram) {
    if (features.bank.filters.empty()) fail("filter bank is empty");
    if (features.bank.bins < 1) fail("bins must be >= 1");
  }
  SolverParams p = solver;
  p.lambda = lambda;
  p.validate();
}

IndicatorField indicator_from_coefficients(const CoefficientField& alpha, const Eigen::MatrixXd& gamma) {
  if (gamma.rows() != alpha.rank()) throw std::invalid_argument("indicator_from_coefficients: dimension mismatch");
  IndicatorField f;
  f.extent = alpha.extent;
  f.f.resize(alpha.pixels(), gamma.cols());
  for (Eigen::Index l = 0; l < gamma.cols(); ++l) {
    f.f.col(l) = (alpha.alpha.colwise() - gamma.col(l)).colwise().squaredNorm().transpose();
  }
  return f;
}

Eigen::MatrixXd update_means(const CoefficientField& alpha, const LabelField& u, const Eigen::MatrixXd& previous,
                             std::vector<int>* empty_labels) {
  if (u.u.rows() != alpha.pixels()) throw std::invalid_argument("update_means: pixel count mismatch");
  if (previous.rows() != alpha.rank() || previous.cols() != u.u.cols()) {
    throw std::invalid_argument("update_means: previous means have the wrong shape");
  }
  Eigen::MatrixXd gamma = previous;
  const Eigen::MatrixXd weighted = alpha.alpha * u.u;  // r x k
  for (Eigen::Index l = 0; l < u.u.cols(); ++l) {
    const double mass = u.u.col(l).sum();
    if (mass > 0.0) {
      gamma.col(l) = weighted.col(l) / mass;
    } else if (empty_labels != nullptr) {
      empty_labels->push_back(static_cast<int>(l));
    }
  }
  return gamma;
}

FeatureMatrix compute_features(const ImageGrid& image, const FeatureSpec& spec) {
  if (spec.scales.empty()) throw std::invalid_argument("compute_features: no window scale");
  std::vector<std::pair<FeatureMatrix, double>> parts;
  for (const auto& [s, weight] : spec.scales) {
    const WindowSpec window{s, spec.padding};
    if (spec.kind == FeatureKind::kFftModulus) {
      parts.emplace_back(fft_modulus(image.luminance(), window), weight);
    } else {
      parts.emplace_back(spectral_histogram(image, spec.bank, window), weight);
    }
  }
  if (parts.size() == 1 && parts.front().second == 1.0) return std::move(parts.front().first);
  return stack_features(parts);
}

SegmentationResult refine_segmentation(const CoefficientField& alpha, const Eigen::MatrixXd& initial_means,
                                       const SegmentationConfig& config) {
  if (config.outer_iterations < 1) throw std::invalid_argument("refine_segmentation: outer_iterations must be >= 1");
  SolverParams params = config.solver;
  params.lambda = config.lambda;
  params.validate();

  const int k = static_cast<int>(initial_means.cols());
  SegmentationResult result;
  result.extent = alpha.extent;
  result.diagnostics.k = k;

  Eigen::MatrixXd gamma = initial_means;
  LabelField u = initial_labeling(alpha, gamma);
  DualField p(alpha.extent, k);

  for (int round = 0; round < config.outer_iterations; ++round) {
    OuterRound info;
    const IndicatorField f = indicator_from_coefficients(alpha, gamma);
    SolveResult solved = solve(f, u, p, params);
    u = std::move(solved.u);
    p = std::move(solved.p);
    info.inner_iterations = solved.iterations;
    info.converged = solved.converged;
    info.relaxed_energy = relaxed_energy(f, u, config.lambda);
    result.energy_trace.push_back(info.relaxed_energy);

    info.fidelity_before_update = fidelity_energy(f, u);
    gamma = update_means(alpha, u, gamma, &info.empty_labels);
    info.fidelity_after_update = fidelity_energy(indicator_from_coefficients(alpha, gamma), u);
    const double slack = 1e-9 * std::max(1.0, std::abs(info.fidelity_before_update));
    if (info.fidelity_after_update > info.fidelity_before_update + slack) {
      result.diagnostics.mean_update_monotone = false;
      result.diagnostics.warnings.push_back("mean refresh increased the data term in round " +
                                            std::to_string(round + 1));
    }
    for (int l : info.empty_labels) {
      result.diagnostics.warnings.push_back("label " + std::to_string(l + 1) + " empty in round " +
                                            std::to_string(round + 1) + "; mean kept");
    }
    result.diagnostics.rounds.push_back(std::move(info));
  }

  result.mask = u.hard_labels();
  for (int& label : result.mask) ++label;
  result.soft = std::move(u);
  result.means_coeff = std::move(gamma);
  return result;
}

std::vector<int> extend_mask(const std::vector<int>& interior, GridExtent interior_extent, int margin,
                             GridExtent full_extent) {
  if (interior.size() != interior_extent.size()) throw std::invalid_argument("extend_mask: size mismatch");
  if (interior_extent.width + 2 * margin != full_extent.width ||
      interior_extent.height + 2 * margin != full_extent.height) {
    throw std::invalid_argument("extend_mask: extents inconsistent with margin");
  }
  std::vector<int> full(full_extent.size());
  for (int y = 0; y < full_extent.height; ++y) {
    const int iy = std::clamp(y - margin, 0, interior_extent.height - 1);
    for (int x = 0; x < full_extent.width; ++x) {
      const int ix = std::clamp(x - margin, 0, interior_extent.width - 1);
      full[full_extent.index(x, y)] = interior[interior_extent.index(ix, iy)];
    }
  }
  return full;
}

SegmentationResult segment_features(const FeatureMatrix& features, GridExtent image_extent,
                                    const SegmentationConfig& config) {
  config.validate();
  if (!features.values.allFinite()) {
    for (Eigen::Index i = 0; i < features.pixels(); ++i) {
      if (!features.values.col(i).allFinite()) {
        const auto e = features.extent;
        throw NumericalError("segment: non-finite feature at pixel (" +
                             std::to_string(i % e.width + features.margin) + ", " +
                             std::to_string(i / e.width + features.margin) + ")");
      }
    }
  }
  const Eigen::Index full_rank = std::min(features.dimension(), features.pixels());

  PcaModel model;
  int k = config.k;
  std::optional<int> estimated;
  if (k == 0) {
    const int cap = static_cast<int>(std::min<Eigen::Index>(full_rank, kDefaultEigenvalueCap));
    const PcaModel wide = fit_pca_model(features, cap, cap);
    estimated = estimate_segment_count(wide, features.pixels(), config.omega);
    k = std::max(2, *estimated);
    if (k > wide.rank()) throw std::invalid_argument("segment: estimated k exceeds the retained rank");
    model = wide.truncated(k);
  } else {
    if (k > full_rank) {
      throw std::invalid_argument("segment: k = " + std::to_string(k) + " exceeds feature rank bound " +
                                  std::to_string(full_rank));
    }
    model = fit_pca_model(features, k);
  }

  CoefficientField alpha;
  alpha.extent = features.extent;
  alpha.alpha = model.project(features.values);

  const int edge_offset = std::max(1, config.features.primary_half_width());
  const EdgenessField delta = edgeness(alpha, edge_offset);
  const InteriorSelection selection = select_interior(alpha, delta, config.delta, k);
  const ClusterResult clusters = kmeans(selection.points, k, config.seed, config.kmeans);

  SegmentationResult result = refine_segmentation(alpha, clusters.centers, config);
  result.means_feature = model.reconstruct(result.means_coeff);

  auto& diag = result.diagnostics;
  diag.feature_dimension = features.dimension();
  diag.feature_pixels = features.pixels();
  diag.margin = features.margin;
  diag.estimated_k = estimated;
  diag.clustered_points = selection.indices.size();
  diag.selection_fallback = selection.fallback;
  diag.kmeans_inertia = clusters.inertia;
  diag.pca_tail = model.eigenvalue_tail(k);
  if (estimated && *estimated < 2) diag.warnings.push_back("estimated k = 1 raised to 2");
  if (selection.fallback) diag.warnings.push_back("edgeness threshold kept fewer than k points; clustered all pixels");
  diag.warnings.insert(diag.warnings.end(), features.warnings.begin(), features.warnings.end());

  result.mask = extend_mask(result.mask, features.extent, features.margin, image_extent);
  result.extent = image_extent;
  return result;
}

SegmentationResult segment(const ImageGrid& image, const SegmentationConfig& config) {
  config.validate();
  image.require_finite("segment");
  return segment_features(compute_features(image, config.features), image.extent(), config);
}

}  // namespace mpseg
