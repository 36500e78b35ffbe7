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
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mpseg/segmentation.hpp"

namespace mpseg::cli {

/// Invalid invocation or configuration; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key=value map. Keys are unique; later assignments win.
using KeyValues = std::map<std::string, std::string>;

/// Parses `key = value` lines. Blank lines and lines starting with '#' are
/// skipped. `origin` names the source in error messages.
[[nodiscard]] KeyValues parse_key_values(std::string_view text, const std::string& origin);
[[nodiscard]] KeyValues read_key_value_file(const std::filesystem::path& path);
/// One `key = value` line per entry in key order.
[[nodiscard]] std::string format_key_values(const KeyValues& values);

/// Overlays `top` on `base`. Setting either `k` or `estimate_omega` in `top`
/// clears the other from `base`, so a flag can switch the counting mode.
[[nodiscard]] KeyValues merge_key_values(KeyValues base, const KeyValues& top);

/// Shortest decimal text that parses back to the same double.
[[nodiscard]] std::string format_number(double value);

enum class FeatureChoice { kSpectralHistogram, kFftModulus };

[[nodiscard]] std::string to_string(FeatureChoice choice);

/// Fully resolved parameters of one `segment` run.
struct SegmentRunConfig {
  std::string input;
  std::string output_dir;
  FeatureChoice features = FeatureChoice::kFftModulus;
  std::optional<int> k;
  std::optional<double> estimate_omega;
  double lambda = 0.0;
  double delta = 0.0;
  std::vector<int> s;
  std::vector<double> weights;
  int bins = 11;
  std::vector<double> gabor_sizes;
  std::vector<double> gabor_orientations_deg;
  bool gabor_intensity = true;
  Padding padding = Padding::kMirror;
  int outer_iterations = 3;
  SolverParams solver;
  std::uint64_t seed = 0;

  /// Core configuration equivalent to these parameters.
  [[nodiscard]] SegmentationConfig to_segmentation_config() const;
  /// Every parameter as key=value; resolving the result yields *this.
  [[nodiscard]] KeyValues to_key_values() const;
};

/// Applies feature-dependent defaults to the given keys and validates all
/// ranges. Throws UsageError naming the offending key.
///
/// Defaults: fft-mod uses lambda 25, delta 1.0, s 15. spectral-hist uses
/// lambda 0.005, delta 0.25, s 15,30 weighted 0.8,0.2, 11 bins and Gabor
/// sizes 5,7,9 at 0,90,45,-45 degrees plus the intensity filter.
[[nodiscard]] SegmentRunConfig resolve_segment_config(const KeyValues& values);

/// Keys accepted by resolve_segment_config.
[[nodiscard]] const std::vector<std::string>& segment_config_keys();

}  // namespace mpseg::cli
