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
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "mpseg/image.hpp"

namespace mpseg {

enum class Padding { kMirror, kClamp };

/// (2s+1) x (2s+1) window centred on a pixel.
struct WindowSpec {
  int half_width = 0;
  Padding padding = Padding::kMirror;

  [[nodiscard]] int side() const { return 2 * half_width + 1; }
  /// Throws std::invalid_argument if the window does not fit `extent`.
  void validate(GridExtent extent) const;
};

/// Per-pixel feature vectors; column i belongs to pixel i of `extent`
/// (row-major). When `margin` > 0 the columns cover only the interior of the
/// source image, i.e. source pixel (x + margin, y + margin).
struct FeatureMatrix {
  Eigen::MatrixXd values;  // m x n
  GridExtent extent;
  int margin = 0;
  std::vector<std::string> warnings;

  [[nodiscard]] Eigen::Index dimension() const { return values.rows(); }
  [[nodiscard]] Eigen::Index pixels() const { return values.cols(); }
};

enum class FilterKind {
  kIntensity,         // identity on the scalar (luminance) image
  kChannelIntensity,  // identity on one channel of the input
  kGabor,             // magnitude of complex Gabor response
  kGaussian,
  kLaplacianOfGaussian,
};

/// One linear filter of a spectral-histogram bank.
///
/// Gabor convention: `scale` is the kernel size sigma; the carrier wavelength
/// equals `scale`, the isotropic Gaussian envelope has standard deviation
/// 0.56 * scale (one-octave bandwidth), phase is zero and the real part is
/// made DC-free. The feature uses the modulus of the complex response.
/// `orientation` (radians) is the direction of the carrier wave vector, so
/// orientation 0 responds to intensity varying along x (vertical stripes).
struct Filter {
  FilterKind kind = FilterKind::kIntensity;
  double scale = 0.0;
  double orientation = 0.0;
  int channel = 0;

  static Filter intensity() { return {}; }
  static Filter channel_intensity(int c) { return {FilterKind::kChannelIntensity, 0.0, 0.0, c}; }
  static Filter gabor(double size, double theta) { return {FilterKind::kGabor, size, theta, 0}; }
  static Filter gaussian(double sigma) { return {FilterKind::kGaussian, sigma, 0.0, 0}; }
  static Filter log(double sigma) { return {FilterKind::kLaplacianOfGaussian, sigma, 0.0, 0}; }

  [[nodiscard]] std::string describe() const;
};

struct FilterBank {
  std::vector<Filter> filters;
  int bins = 11;

  /// Intensity filter plus Gabor filters for every (size, orientation) pair.
  static FilterBank gabor_bank(const std::vector<double>& sizes, const std::vector<double>& orientations,
                               int bins, bool include_intensity = true);
};

/// Applies one filter with mirror boundary handling. Multi-channel input is
/// reduced to its luminance except for kChannelIntensity.
[[nodiscard]] ImageGrid apply_filter(const ImageGrid& image, const Filter& filter);

/// Equidistant bin edges z_1 = min, z_{q+1} = max. Returns the 0-based bin of
/// `value`; the last bin is right-inclusive. A degenerate range (min == max)
/// maps everything to the last bin.
[[nodiscard]] int histogram_bin(double value, double lo, double hi, int bins);

/// Local spectral histograms: for each filter, the normalized histogram of
/// filtered values in the window around each pixel (feature dimension
/// filters * bins). Edges are global per filtered image.
[[nodiscard]] FeatureMatrix spectral_histogram(const ImageGrid& image, const FilterBank& bank,
                                               const WindowSpec& window);

/// Modulus of the 2D DFT of the raw window samples, computed only where the
/// window lies inside the image (margin = s). Feature dimension (2s+1)^2 in
/// row-major frequency order (ky, kx), ky, kx in [0, 2s].
[[nodiscard]] FeatureMatrix fft_modulus(const ImageGrid& image, const WindowSpec& window);

/// Vertical concatenation of weight-scaled blocks. All parts must share the
/// same pixel grid.
[[nodiscard]] FeatureMatrix stack_features(const std::vector<std::pair<FeatureMatrix, double>>& parts);

}  // namespace mpseg
