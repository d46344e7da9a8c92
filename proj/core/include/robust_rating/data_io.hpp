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

// Rating ingestion and result files.
//
// Input CSV: comma separated, header row first. Empty or "0" rating cells
// mark unobserved raters and are skipped.
//
// Curve CSV header: q,aggregator,regret,ln_regret

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "robust_rating/adversary.hpp"
#include "robust_rating/model.hpp"

namespace robust_rating {

struct RatingRecord {
  int rating = 1;
  std::optional<std::string> source;

  friend bool operator==(const RatingRecord&, const RatingRecord&) = default;
};

struct CsvSchema {
  std::string rating_column = "rating";
  /// Optional column copied into RatingRecord::source.
  std::optional<std::string> source_column;
};

struct CurvePoint {
  double q = 1.0;
  std::string aggregator;
  double regret = 0.0;

  /// ln(regret), or empty when regret <= 0.
  std::optional<double> ln_regret() const;
};

/// Collapses a 1..10 scale to 1..7: 1..4 become 1, s >= 5 becomes s − 3.
int remap_rating(int s);

std::vector<RatingRecord> read_ratings_csv(const std::filesystem::path& path,
                                           const CsvSchema& schema = {},
                                           bool remap = false);

/// Counts per rating. With n_known, the remainder is unobserved.
ObservedHistogram build_histogram(const std::vector<RatingRecord>& records,
                                  RatingScale m,
                                  std::optional<std::int64_t> n_known = {});

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

void write_curve_csv(const std::vector<CurvePoint>& points,
                     const std::filesystem::path& path);
std::vector<CurvePoint> read_curve_csv(const std::filesystem::path& path);

std::string report_json(const WorstCaseRecord& record);
void write_report_json(const WorstCaseRecord& record,
                       const std::filesystem::path& path);
WorstCaseRecord parse_report_json(const std::string& text);
WorstCaseRecord read_report_json(const std::filesystem::path& path);

/// SVG 1.1 line chart of ln regret against q, one polyline per aggregator in
/// first-appearance order. Points with no ln regret are left out.
std::string svg_line_chart(const std::vector<CurvePoint>& points);
void render_svg_line_chart(const std::vector<CurvePoint>& points,
                           const std::filesystem::path& path);

}  // namespace robust_rating
