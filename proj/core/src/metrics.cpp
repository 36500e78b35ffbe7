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

#include "mpseg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mpseg {
namespace {

void require_same_extent(const SegMask& a, const SegMask& b) {
  a.validate();
  b.validate();
  if (!(a.extent == b.extent)) throw std::invalid_argument("masks differ in extent");
}

// Minimum-cost perfect assignment on a square matrix; returns row -> column.
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace

int SegMask::label_count() const { return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()); }

void SegMask::validate() const {
  if (labels.size() != extent.size()) throw std::invalid_argument("SegMask: label count does not match extent");
  for (int l : labels)
    if (l < 1) throw std::invalid_argument("SegMask: labels must be >= 1");
}

std::vector<std::vector<std::int64_t>> confusion_matrix(const SegMask& pred, const SegMask& truth) {
  require_same_extent(pred, truth);
  std::vector<std::vector<std::int64_t>> counts(pred.label_count(),
                                                std::vector<std::int64_t>(truth.label_count(), 0));
  for (std::size_t i = 0; i < pred.labels.size(); ++i) ++counts[pred.labels[i] - 1][truth.labels[i] - 1];
  return counts;
}

std::vector<int> match_labels(const SegMask& pred, const SegMask& truth) {
  const auto counts = confusion_matrix(pred, truth);
  const int kp = pred.label_count();
  const int kt = truth.label_count();
  const int n = std::max(kp, kt);
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (int p = 0; p < kp; ++p)
    for (int t = 0; t < kt; ++t) cost[p][t] = -static_cast<double>(counts[p][t]);
  const auto assignment = hungarian(cost);
  std::vector<int> mapping(kp, 0);
  for (int p = 0; p < kp; ++p) mapping[p] = assignment[p] < kt ? assignment[p] + 1 : 0;
  return mapping;
}

double pixel_accuracy(const SegMask& pred, const SegMask& truth) {
  const auto mapping = match_labels(pred, truth);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.labels.size(); ++i)
    if (mapping[pred.labels[i] - 1] == truth.labels[i]) ++hits;
  return pred.labels.empty() ? 1.0 : static_cast<double>(hits) / static_cast<double>(pred.labels.size());
}

std::vector<double> per_class_accuracy(const SegMask& pred, const SegMask& truth) {
  const auto mapping = match_labels(pred, truth);
  std::vector<std::int64_t> hits(truth.label_count(), 0), sizes(truth.label_count(), 0);
  for (std::size_t i = 0; i < truth.labels.size(); ++i) {
    const int t = truth.labels[i];
    ++sizes[t - 1];
    if (mapping[pred.labels[i] - 1] == t) ++hits[t - 1];
  }
  std::vector<double> out(sizes.size(), 0.0);
  for (std::size_t t = 0; t < sizes.size(); ++t)
    if (sizes[t] > 0) out[t] = static_cast<double>(hits[t]) / static_cast<double>(sizes[t]);
  return out;
}

double correct_segmentation_rate(const SegMask& pred, const SegMask& truth, double overlap_thresh) {
  const auto counts = confusion_matrix(pred, truth);
  const int kp = pred.label_count();
  const int kt = truth.label_count();
  std::vector<std::int64_t> pred_size(kp, 0), truth_size(kt, 0);
  for (int p = 0; p < kp; ++p)
    for (int t = 0; t < kt; ++t) {
      pred_size[p] += counts[p][t];
      truth_size[t] += counts[p][t];
    }
  int present = 0;
  int correct = 0;
  for (int t = 0; t < kt; ++t) {
    if (truth_size[t] == 0) continue;
    ++present;
    for (int p = 0; p < kp; ++p) {
      const double overlap = static_cast<double>(counts[p][t]);
      if (pred_size[p] > 0 && overlap >= overlap_thresh * truth_size[t] && overlap >= overlap_thresh * pred_size[p]) {
        ++correct;
        break;
      }
    }
  }
  return present == 0 ? 1.0 : static_cast<double>(correct) / present;
}

std::vector<std::size_t> boundary_pixels(const SegMask& mask) {
  mask.validate();
  const GridExtent e = mask.extent;
  std::vector<std::size_t> out;
  for (int y = 0; y < e.height; ++y) {
    for (int x = 0; x < e.width; ++x) {
      const std::size_t i = e.index(x, y);
      const int l = mask.labels[i];
      const bool edge = (x + 1 < e.width && mask.labels[i + 1] != l) || (x > 0 && mask.labels[i - 1] != l) ||
                        (y + 1 < e.height && mask.labels[i + e.width] != l) ||
                        (y > 0 && mask.labels[i - e.width] != l);
      if (edge) out.push_back(i);
    }
  }
  return out;
}

double max_boundary_deviation(const SegMask& pred, const SegMask& truth) {
  require_same_extent(pred, truth);
  const auto pb = boundary_pixels(pred);
  const auto tb = boundary_pixels(truth);
  if (pb.empty()) return 0.0;
  if (tb.empty()) return std::numeric_limits<double>::infinity();
  const int w = pred.extent.width;
  double worst = 0.0;
  for (std::size_t a : pb) {
    const double ax = static_cast<double>(a % w);
    const double ay = static_cast<double>(a / w);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t b : tb) {
      const double dx = ax - static_cast<double>(b % w);
      const double dy = ay - static_cast<double>(b / w);
      best = std::min(best, dx * dx + dy * dy);
      if (best == 0.0) break;
    }
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

double disagreement(const SegMask& a, const SegMask& b) { return 1.0 - pixel_accuracy(a, b); }

}  // namespace mpseg
