// Copyright 2026 The robust-rating Authors
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

// Runs every acceptance criterion and prints one line per criterion.
// Usage: robust_rating_acceptance [ratings-fixture.csv] [criterion ids...]

#include <cstdlib>
#include <iostream>
#include <string>

#include "robust_rating/validation.hpp"

int main(int argc, char** argv) {
  robust_rating::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (!arg.empty() && arg.find_first_not_of("0123456789") == std::string::npos) {
      opts.only.push_back(std::stoi(arg));
    } else {
      opts.fixture = arg;
    }
  }
  int failed = 0;
  for (const auto& r : robust_rating::run_acceptance(opts)) {
    std::cout << robust_rating::format_result(r) << std::endl;
    if (!r.passed) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " failed")
            << std::endl;
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
