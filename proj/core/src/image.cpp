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

#include "mpseg/image.hpp"

#include <algorithm>
#include <cmath>

namespace mpseg {

ImageGrid::ImageGrid(int width, int height, int channels, double fill)
    : ImageGrid(width, height, channels,
                std::vector<double>(static_cast<std::size_t>(std::max(width, 0)) *
                                        static_cast<std::size_t>(std::max(height, 0)) *
                                        static_cast<std::size_t>(std::max(channels, 0)),
                                    fill)) {}

ImageGrid::ImageGrid(int width, int height, int channels, std::vector<double> values)
    : extent_{width, height}, channels_(channels), values_(std::move(values)) {
  if (width < 1 || height < 1) throw std::invalid_argument("ImageGrid: width and height must be >= 1");
  if (channels < 1) throw std::invalid_argument("ImageGrid: channels must be >= 1");
  if (values_.size() != extent_.size() * static_cast<std::size_t>(channels)) {
    throw std::invalid_argument("ImageGrid: value count does not match width*height*channels");
  }
}

ImageGrid ImageGrid::luminance() const {
  if (channels_ == 1) return *this;
  ImageGrid out(width(), height(), 1);
  const std::size_t n = pixel_count();
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int c = 0; c < channels_; ++c) sum += values_[i * channels_ + c];
    out.values_[i] = sum / channels_;
  }
  return out;
}

ImageGrid ImageGrid::channel(int c) const {
  if (c < 0 || c >= channels_) throw std::out_of_range("ImageGrid::channel: channel index out of range");
  ImageGrid out(width(), height(), 1);
  const std::size_t n = pixel_count();
  for (std::size_t i = 0; i < n; ++i) out.values_[i] = values_[i * channels_ + c];
  return out;
}

double ImageGrid::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

double ImageGrid::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

void ImageGrid::require_finite(const std::string& what) const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      const std::size_t pixel = i / channels_;
      throw std::invalid_argument(what + ": non-finite sample at pixel (" +
                                  std::to_string(pixel % extent_.width) + ", " +
                                  std::to_string(pixel / extent_.width) + ")");
    }
  }
}

}  // namespace mpseg
