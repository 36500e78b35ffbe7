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
#include <vector>

namespace mpseg {

/// Components whose magnitude is below this after a shift are treated as
/// exactly zero so the active set cannot oscillate.
inline constexpr double kSimplexZeroTolerance = 1e-15;

/// Points with nonnegative entries summing to 1 within this tolerance are
/// returned unchanged, which makes the projection exactly idempotent.
inline constexpr double kSimplexSumTolerance = 1e-12;

/// Euclidean projection of `v` onto {w : w >= 0, sum w = 1}, in place.
///
/// Iterative shift-and-clamp on the shrinking support (Michelot). Input is
/// first translated by its maximum so that uniform shifts of representable
/// inputs produce bit-identical results. Throws std::invalid_argument on
/// empty or non-finite input.
void project_simplex_inplace(std::span<double> v);

[[nodiscard]] std::vector<double> project_simplex(std::span<const double> v);

}  // namespace mpseg
