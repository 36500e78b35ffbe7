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

#include <span>

#include "mpseg/image.hpp"

namespace mpseg {

// Forward differences with unit spacing. The difference across the last
// column (x) and last row (y) is zero.
void gradient(GridExtent extent, std::span<const double> u, std::span<double> gx,
              std::span<double> gy);

// Exact negative transpose of gradient():
//   <gradient(u), p> == -<u, divergence(p)>.
void divergence(GridExtent extent, std::span<const double> px, std::span<const double> py,
                std::span<double> out);

// Isotropic discrete total variation: sum_i |(grad u)_i|_2.
[[nodiscard]] double total_variation(GridExtent extent, std::span<const double> u);

[[nodiscard]] VectorField2 gradient(const ImageGrid& field);
[[nodiscard]] ImageGrid divergence(const VectorField2& vf);
[[nodiscard]] double total_variation(const ImageGrid& field);

}  // namespace mpseg
