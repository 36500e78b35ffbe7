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

#include "mpseg/cli/commands.hpp"

#include <fstream>
#include <ostream>

#include "mpseg/cli/raster_io.hpp"

namespace mpseg::cli {

namespace fs = std::filesystem;

SegmentArtifacts run_segment(const SegmentRunConfig& config, std::ostream& log) {
  ImageGrid image;
  try {
    image = read_image(config.input);
  } catch (const RasterError& e) {
    throw RasterError(std::string("input: ") + e.what());
  }
  for (int s : config.s) {
    const int side = 2 * s + 1;
    if (side > std::min(image.width(), image.height())) {
      throw UsageError("s: window side " + std::to_string(side) + " exceeds image extent " +
                       std::to_string(image.width()) + "x" + std::to_string(image.height()));
    }
  }
  const SegmentationConfig core = config.to_segmentation_config();

  SegmentArtifacts out;
  out.result = segment(image, core);
  const auto& diag = out.result.diagnostics;

  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw std::runtime_error("out: cannot create '" + config.output_dir + "': " + ec.message());
  const fs::path dir(config.output_dir);
  out.labels = dir / "labels.png";
  out.overlay = dir / "overlay.png";
  out.manifest = dir / "manifest.txt";

  const SegMask mask{out.result.extent, out.result.mask};
  write_label_map(out.labels, mask);
  write_boundary_overlay(out.overlay, image, mask);

  std::ofstream manifest(out.manifest);
  manifest << "# resolved parameters; rerun with: mpseg segment --config manifest.txt\n";
  manifest << format_key_values(config.to_key_values());
  manifest << "# k_used = " << diag.k << "\n";
  if (diag.estimated_k) manifest << "# estimated_k = " << *diag.estimated_k << "\n";
  manifest << "# feature_dimension = " << diag.feature_dimension << "\n";
  for (std::size_t r = 0; r < diag.rounds.size(); ++r) {
    manifest << "# round_" << r + 1 << "_inner_iterations = " << diag.rounds[r].inner_iterations << "\n";
  }
  for (const auto& w : diag.warnings) manifest << "# warning: " << w << "\n";
  if (!manifest) throw std::runtime_error("out: failed to write '" + out.manifest.string() + "'");

  log << "segments " << diag.k;
  if (diag.estimated_k) log << " (estimated " << *diag.estimated_k << ")";
  log << ", feature dimension " << diag.feature_dimension << ", inner iterations";
  for (const auto& round : diag.rounds) log << " " << round.inner_iterations;
  log << "\n";
  for (const auto& w : diag.warnings) log << "warning: " << w << "\n";
  log << "wrote " << out.labels.string() << ", " << out.overlay.string() << ", " << out.manifest.string() << "\n";
  return out;
}

void write_synth_outputs(const SynthImage& scene, const fs::path& out_dir, std::ostream& log) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("out: cannot create '" + out_dir.string() + "': " + ec.message());
  write_image(out_dir / "image.pfm", scene.image);
  write_image(out_dir / "image.png", scene.image);
  write_label_map(out_dir / "truth.png", SegMask{scene.truth.extent, scene.truth.labels});
  log << "wrote " << (out_dir / "image.pfm").string() << ", " << (out_dir / "image.png").string() << ", "
      << (out_dir / "truth.png").string() << "\n";
}

EvalReport evaluate(const SegMask& pred, const SegMask& truth, double overlap_thresh) {
  if (!(pred.extent == truth.extent)) {
    throw UsageError("truth: extent " + std::to_string(truth.extent.width) + "x" + std::to_string(truth.extent.height) +
                     " differs from pred extent " + std::to_string(pred.extent.width) + "x" +
                     std::to_string(pred.extent.height));
  }
  if (!(overlap_thresh > 0.5 && overlap_thresh <= 1.0)) throw UsageError("overlap: must lie in (0.5, 1]");
  EvalReport report;
  report.pixel_accuracy = pixel_accuracy(pred, truth);
  report.correct_segmentation = correct_segmentation_rate(pred, truth, overlap_thresh);
  report.boundary_deviation = max_boundary_deviation(pred, truth);
  report.pred_labels = pred.label_count();
  report.truth_labels = truth.label_count();
  report.class_accuracy = per_class_accuracy(pred, truth);
  return report;
}

void write_eval_table(std::ostream& out, const EvalReport& report) {
  out << "pixel_accuracy " << format_number(report.pixel_accuracy) << "\n"
      << "correct_segmentation " << format_number(report.correct_segmentation) << "\n"
      << "boundary_deviation " << format_number(report.boundary_deviation) << "\n"
      << "pred_labels " << report.pred_labels << "\n"
      << "truth_labels " << report.truth_labels << "\n";
  for (std::size_t t = 0; t < report.class_accuracy.size(); ++t)
    out << "class_accuracy_" << t + 1 << " " << format_number(report.class_accuracy[t]) << "\n";
}

void write_eval_csv(const fs::path& path, const EvalReport& report) {
  std::ofstream out(path);
  out << "metric,value\n"
      << "pixel_accuracy," << format_number(report.pixel_accuracy) << "\n"
      << "correct_segmentation," << format_number(report.correct_segmentation) << "\n"
      << "boundary_deviation," << format_number(report.boundary_deviation) << "\n"
      << "pred_labels," << report.pred_labels << "\n"
      << "truth_labels," << report.truth_labels << "\n";
  for (std::size_t t = 0; t < report.class_accuracy.size(); ++t)
    out << "class_accuracy_" << t + 1 << "," << format_number(report.class_accuracy[t]) << "\n";
  if (!out) throw std::runtime_error("csv: failed to write '" + path.string() + "'");
}

}  // namespace mpseg::cli
