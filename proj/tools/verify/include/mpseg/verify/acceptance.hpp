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
#include <string>
#include <vector>

namespace mpseg::verify {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;  // measured values behind the verdict
  double seconds = 0.0;
};

enum class Suite { kOperators, kCrystal, kTexture, kAll };

/// "operators", "crystal", "texture" or "all"; throws cli::UsageError otherwise.
[[nodiscard]] Suite parse_suite(const std::string& name);

/// Criterion ids checked by a suite, ascending.
[[nodiscard]] std::vector<int> suite_criteria(Suite suite);

/// Runs every criterion of `suite`. Intermediate files go to `work_dir`.
/// Progress messages go to `progress`; results come back in id order.
[[nodiscard]] std::vector<CriterionResult> run_suite(Suite suite, const std::filesystem::path& work_dir,
                                                     std::ostream& progress);

/// `PASS  C6  title: detail (1.2 s)` style line without a newline.
[[nodiscard]] std::string format_result(const CriterionResult& result);

/// Tab-separated table with a header row.
void write_summary(const std::filesystem::path& path, const std::vector<CriterionResult>& results);

/// Runs the suite, prints one line per criterion to `out` and writes
/// summary.tsv into `out_dir`. Returns 0 when every criterion passed.
int run_reproduce(Suite suite, const std::filesystem::path& out_dir, std::ostream& out);

}  // namespace mpseg::verify
