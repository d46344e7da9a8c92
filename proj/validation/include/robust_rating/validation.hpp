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

// End-to-end acceptance checks. Each criterion reports pass/fail, a one-line
// detail with the measured numbers, and its wall time against a budget. A
// criterion only passes when it is both correct and within budget.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace robust_rating {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct AcceptanceOptions {
  /// Synthetic ratings file for the ingest pipeline check.
  std::optional<std::filesystem::path> fixture;
  /// Fast subset only (selftest).
  bool fast = false;
  /// Restrict to these criterion ids; empty runs all.
  std::vector<int> only;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "[PASS] 3 name (1.23 s / 30 s): detail"
std::string format_result(const CriterionResult& result);

/// Known ratings fixture expectations: 50 rows, posted column remapped to 7
/// levels, q = 0.3.
struct FixtureExpectation {
  int n = 50;
  int m = 7;
  double q = 0.3;
  double avg = 4.939393939394;
  double paa = 4.913096125186;
  double bea = 4.702712681126;
};

}  // namespace robust_rating
