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

#include "mpseg/grid_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace mpseg {
namespace {

void require_size(GridExtent extent, std::size_t size, const char* what) {
  if (size != extent.size()) throw std::invalid_argument(std::string(what) + ": size does not match grid extent");
}

void require_scalar(const ImageGrid& field) {
  if (field.channels() != 1) throw std::invalid_argument("grid operator expects a single-channel field");
}

}  // namespace

void gradient(GridExtent extent, std::span<const double> u, std::span<double> gx,
              std::span<double> gy) {
  require_size(extent, u.size(), "gradient");
  require_size(extent, gx.size(), "gradient");
  require_size(extent, gy.size(), "gradient");
  const int w = extent.width;
  const int h = extent.height;
  for (int y = 0; y < h; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * w;
    for (int x = 0; x + 1 < w; ++x) gx[row + x] = u[row + x + 1] - u[row + x];
    gx[row + w - 1] = 0.0;
    if (y + 1 < h) {
      for (int x = 0; x < w; ++x) gy[row + x] = u[row + w + x] - u[row + x];
    } else {
      for (int x = 0; x < w; ++x) gy[row + x] = 0.0;
    }
  }
}

void divergence(GridExtent extent, std::span<const double> px, std::span<const double> py,
                std::span<double> out) {
  require_size(extent, px.size(), "divergence");
  require_size(extent, py.size(), "divergence");
  require_size(extent, out.size(), "divergence");
  const int w = extent.width;
  const int h = extent.height;
  for (int y = 0; y < h; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      const std::size_t i = row + x;
      double d = 0.0;
      if (x + 1 < w) d += px[i];
      if (x > 0) d -= px[i - 1];
      if (y + 1 < h) d += py[i];
      if (y > 0) d -= py[i - w];
      out[i] = d;
    }
  }
}

double total_variation(GridExtent extent, std::span<const double> u) {
  require_size(extent, u.size(), "total_variation");
  const int w = extent.width;
  const int h = extent.height;
  double tv = 0.0;
  for (int y = 0; y < h; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      const std::size_t i = row + x;
      const double dx = x + 1 < w ? u[i + 1] - u[i] : 0.0;
      const double dy = y + 1 < h ? u[i + w] - u[i] : 0.0;
      tv += std::hypot(dx, dy);
    }
  }
  return tv;
}

VectorField2 gradient(const ImageGrid& field) {
  require_scalar(field);
  VectorField2 vf(field.extent());
  gradient(field.extent(), field.values(), vf.x, vf.y);
  return vf;
}

ImageGrid divergence(const VectorField2& vf) {
  ImageGrid out(vf.extent.width, vf.extent.height, 1);
  divergence(vf.extent, vf.x, vf.y, out.values());
  return out;
}

double total_variation(const ImageGrid& field) {
  require_scalar(field);
  return total_variation(field.extent(), field.values());
}

}  // namespace mpseg
