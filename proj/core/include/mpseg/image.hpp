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

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpseg {

/// Thrown when a numerical routine produces NaN/Inf or cannot continue.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Width and height of a regular pixel grid; pixel (x, y) has linear index
/// y * width + x.
struct GridExtent {
  int width = 0;
  int height = 0;

  [[nodiscard]] std::size_t size() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  [[nodiscard]] std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(x);
  }
  [[nodiscard]] bool contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width && y < height;
  }
  friend bool operator==(const GridExtent&, const GridExtent&) = default;
};

/// Pixel field on a regular grid, row-major with interleaved channels.
class ImageGrid {
 public:
  ImageGrid() = default;
  ImageGrid(int width, int height, int channels = 1, double fill = 0.0);
  ImageGrid(int width, int height, int channels, std::vector<double> values);

  [[nodiscard]] int width() const { return extent_.width; }
  [[nodiscard]] int height() const { return extent_.height; }
  [[nodiscard]] int channels() const { return channels_; }
  [[nodiscard]] GridExtent extent() const { return extent_; }
  [[nodiscard]] std::size_t pixel_count() const { return extent_.size(); }

  [[nodiscard]] double& at(int x, int y, int c = 0) {
    return values_[(extent_.index(x, y)) * channels_ + c];
  }
  [[nodiscard]] double at(int x, int y, int c = 0) const {
    return values_[(extent_.index(x, y)) * channels_ + c];
  }

  [[nodiscard]] std::span<double> values() { return values_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }

  /// Channel average; returns a copy for single-channel images.
  [[nodiscard]] ImageGrid luminance() const;
  /// Extracts one channel as a scalar image.
  [[nodiscard]] ImageGrid channel(int c) const;

  [[nodiscard]] double max_value() const;
  [[nodiscard]] double min_value() const;

  /// Throws std::invalid_argument if any sample is NaN or infinite.
  void require_finite(const std::string& what) const;

 private:
  GridExtent extent_{};
  int channels_ = 1;
  std::vector<double> values_;
};

/// Per-pixel 2-vectors sharing the extent of the grid they came from.
struct VectorField2 {
  GridExtent extent;
  std::vector<double> x;
  std::vector<double> y;

  VectorField2() = default;
  explicit VectorField2(GridExtent e) : extent(e), x(e.size(), 0.0), y(e.size(), 0.0) {}
};

}  // namespace mpseg
