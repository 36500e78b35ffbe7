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

#include "mpseg/simplex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace mpseg {
namespace {

bool on_simplex(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) {
    if (x < 0.0) return false;
    sum += x;
  }
  return std::abs(sum - 1.0) <= kSimplexSumTolerance;
}

// `active` flags live in a caller-provided buffer to keep the per-pixel hot
// path allocation free for small k.
void project_with_buffer(std::span<double> v, std::span<unsigned char> active) {
  const std::size_t k = v.size();
  const double vmax = *std::max_element(v.begin(), v.end());
  for (double& x : v) x -= vmax;

  std::fill(active.begin(), active.end(), static_cast<unsigned char>(1));
  std::size_t support = k;
  for (;;) {
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      if (active[i]) sum += v[i];
    const double shift = (sum - 1.0) / static_cast<double>(support);

    bool clamped = false;
    for (std::size_t i = 0; i < k; ++i) {
      if (!active[i]) continue;
      const double w = v[i] - shift;
      if (w <= kSimplexZeroTolerance) {
        active[i] = 0;
        --support;
        clamped = true;
      }
    }
    if (!clamped || support == 0) {
      if (support == 0) {
        // Only reachable through rounding when all entries tie; spread evenly.
        for (std::size_t i = 0; i < k; ++i) v[i] = 1.0 / static_cast<double>(k);
        return;
      }
      double total = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        v[i] = active[i] ? v[i] - shift : 0.0;
        total += v[i];
      }
      if (std::abs(total - 1.0) > kSimplexSumTolerance) {
        for (double& x : v) x /= total;
      }
      return;
    }
  }
}

}  // namespace

void project_simplex_inplace(std::span<double> v) {
  if (v.empty()) throw std::invalid_argument("project_simplex: empty vector");
  for (double x : v)
    if (!std::isfinite(x)) throw std::invalid_argument("project_simplex: non-finite entry");
  if (on_simplex(v)) return;

  constexpr std::size_t kStack = 32;
  if (v.size() <= kStack) {
    std::array<unsigned char, kStack> buffer{};
    project_with_buffer(v, std::span(buffer.data(), v.size()));
  } else {
    std::vector<unsigned char> buffer(v.size());
    project_with_buffer(v, buffer);
  }
}

std::vector<double> project_simplex(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  project_simplex_inplace(out);
  return out;
}

}  // namespace mpseg
