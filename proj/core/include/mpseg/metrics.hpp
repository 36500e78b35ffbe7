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

#include <cstdint>
#include <vector>

#include "mpseg/image.hpp"

namespace mpseg {

/// Hard segmentation with labels 1..k.
struct SegMask {
  GridExtent extent;
  std::vector<int> labels;

  [[nodiscard]] int label_count() const;
  /// Throws std::invalid_argument for size mismatch or labels < 1.
  void validate() const;
};

/// counts[p - 1][t - 1] = #pixels with pred label p and truth label t.
[[nodiscard]] std::vector<std::vector<std::int64_t>> confusion_matrix(const SegMask& pred, const SegMask& truth);

/// Optimal one-to-one assignment of predicted to truth labels maximizing the
/// total overlap (Hungarian method). Entry p - 1 is the truth label matched
/// to pred label p, or 0 if p stays unmatched (more pred than truth labels).
[[nodiscard]] std::vector<int> match_labels(const SegMask& pred, const SegMask& truth);

/// Fraction of pixels whose matched predicted label equals the truth label.
[[nodiscard]] double pixel_accuracy(const SegMask& pred, const SegMask& truth);

/// Entry t - 1 is the fraction of truth label t recovered under match_labels.
/// Labels absent from truth score 0.
[[nodiscard]] std::vector<double> per_class_accuracy(const SegMask& pred, const SegMask& truth);

/// Fraction of truth regions T for which some predicted region P satisfies
/// |P n T| >= thresh |T| and |P n T| >= thresh |P|.
[[nodiscard]] double correct_segmentation_rate(const SegMask& pred, const SegMask& truth, double overlap_thresh = 0.75);

/// Pixels with a 4-neighbour of a different label.
[[nodiscard]] std::vector<std::size_t> boundary_pixels(const SegMask& mask);

/// Largest Euclidean distance from a predicted boundary pixel to the nearest
/// truth boundary pixel (0 when pred has no boundary; +inf when only the
/// truth has none).
[[nodiscard]] double max_boundary_deviation(const SegMask& pred, const SegMask& truth);

/// Fraction of pixels where the two masks disagree after optimal matching.
[[nodiscard]] double disagreement(const SegMask& a, const SegMask& b);

}  // namespace mpseg
