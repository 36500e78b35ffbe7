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

#include <filesystem>
#include <iosfwd>

#include "mpseg/cli/config.hpp"
#include "mpseg/cli/scenes.hpp"
#include "mpseg/metrics.hpp"
#include "mpseg/segmentation.hpp"

namespace mpseg::cli {

/// Exit statuses shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct SegmentArtifacts {
  std::filesystem::path labels;    // labels.png, indexed
  std::filesystem::path overlay;   // overlay.png, RGB
  std::filesystem::path manifest;  // manifest.txt, key=value
  SegmentationResult result;
};

/// Segments config.input and writes the three artifacts into
/// config.output_dir (created if missing). Throws UsageError when a window
/// does not fit the image, RasterError for unreadable input.
SegmentArtifacts run_segment(const SegmentRunConfig& config, std::ostream& log);

/// Writes image.pfm (lossless), image.png (stretched preview) and truth.png
/// (indexed label map) into `out_dir`.
void write_synth_outputs(const SynthImage& scene, const std::filesystem::path& out_dir, std::ostream& log);

struct EvalReport {
  double pixel_accuracy = 0.0;
  double correct_segmentation = 0.0;
  double boundary_deviation = 0.0;
  int pred_labels = 0;
  int truth_labels = 0;
  std::vector<double> class_accuracy;  // index t - 1 for truth label t
};

[[nodiscard]] EvalReport evaluate(const SegMask& pred, const SegMask& truth, double overlap_thresh);
/// One `name value` pair per line.
void write_eval_table(std::ostream& out, const EvalReport& report);
/// `metric,value` header followed by one row per metric.
void write_eval_csv(const std::filesystem::path& path, const EvalReport& report);

}  // namespace mpseg::cli
