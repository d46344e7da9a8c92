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

// robust-rating command line: aggregate, curve, lower-bound, worst-case,
// simulate, selftest.
//
// Exit codes: 0 success, 1 selftest failure, 2 usage, 3 computation,
// 4 I/O or input data.

#pragma once

#include <iosfwd>

namespace robust_rating::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSelftestFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitComputation = 3;
inline constexpr int kExitIo = 4;

/// Parses argv and runs one subcommand. Results go to `out`, diagnostics to
/// `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace robust_rating::cli
