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

#include "robust_rating/error.hpp"

namespace robust_rating {
namespace {

std::string with_line(const std::string& message,
                      std::optional<std::size_t> line) {
  if (!line) return message;
  return "line " + std::to_string(*line) + ": " + message;
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kAllUnobserved: return "AllUnobserved";
    case ErrorCode::kInconsistentCounts: return "InconsistentCounts";
    case ErrorCode::kEnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::kNoReports: return "NoReports";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kBadScale: return "BadScale";
    case ErrorCode::kBadTotal: return "BadTotal";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(with_line(message, line)), code_(code), line_(line) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace robust_rating
