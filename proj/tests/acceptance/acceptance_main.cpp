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

// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any
// criterion fails. Usage: mpseg_acceptance [suite] [work_dir]

#include <filesystem>
#include <iostream>
#include <string>

#include "mpseg/verify/acceptance.hpp"

int main(int argc, char** argv) {
  const std::string suite_name = argc > 1 ? argv[1] : "all";
  const std::filesystem::path work =
      argc > 2 ? std::filesystem::path(argv[2]) : std::filesystem::current_path() / "acceptance_work";
  try {
    const auto suite = mpseg::verify::parse_suite(suite_name);
    const auto results = mpseg::verify::run_suite(suite, work, std::cerr);
    bool all = true;
    for (const auto& r : results) {
      std::cout << mpseg::verify::format_result(r) << "\n";
      all = all && r.passed;
    }
    mpseg::verify::write_summary(work / "summary.tsv", results);
    return all ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "acceptance: " << e.what() << "\n";
    return 2;
  }
}
