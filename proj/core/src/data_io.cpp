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

#include "robust_rating/data_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "json.hpp"
#include "robust_rating/error.hpp"

namespace robust_rating {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Splits one CSV line. Double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back(trim(field));
      field.clear();
    } else {
      field += c;
    }
  }
  out.emplace_back(trim(field));
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  return in;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::kIoError, "write failed for " + path.string());
}

std::size_t column_index(const std::vector<std::string>& header,
                         const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(ErrorCode::kParseError, "missing column '" + name + "'", 1);
}

double parse_double(std::string_view text, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kParseError,
                "expected a number, got '" + std::string(text) + "'", line);
  }
  return value;
}

json structure_vector(std::span<const double> values) {
  return json(std::vector<double>(values.begin(), values.end()));
}

}  // namespace

std::optional<double> CurvePoint::ln_regret() const {
  if (regret > 0.0) return std::log(regret);
  return std::nullopt;
}

int remap_rating(int s) {
  if (s < 1 || s > 10) {
    fail(ErrorCode::kOutOfRange,
         "rating " + std::to_string(s) + " is outside 1..10");
  }
  return s <= 4 ? 1 : s - 3;
}

std::vector<RatingRecord> read_ratings_csv(const std::filesystem::path& path,
                                           const CsvSchema& schema, bool remap) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kParseError, "missing header row", 1);
  }
  const std::vector<std::string> header = split_csv(line);
  const std::size_t rating_col = column_index(header, schema.rating_column);
  std::optional<std::size_t> source_col;
  if (schema.source_column) source_col = column_index(header, *schema.source_column);

  std::vector<RatingRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::kParseError,
                  "expected " + std::to_string(header.size()) + " fields, got " +
                      std::to_string(fields.size()),
                  line_no);
    }
    const std::string& cell = fields[rating_col];
    if (cell.empty()) continue;
    int rating = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), rating);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
      throw Error(ErrorCode::kParseError,
                  "rating '" + cell + "' is not an integer", line_no);
    }
    if (rating == 0) continue;
    if (remap) {
      if (rating < 1 || rating > 10) {
        throw Error(ErrorCode::kOutOfRange,
                    "rating " + cell + " is outside 1..10", line_no);
      }
      rating = remap_rating(rating);
    } else if (rating < 1) {
      throw Error(ErrorCode::kOutOfRange, "rating " + cell + " is below 1",
                  line_no);
    }
    RatingRecord rec{rating, std::nullopt};
    if (source_col) rec.source = fields[*source_col];
    out.push_back(std::move(rec));
  }
  return out;
}

ObservedHistogram build_histogram(const std::vector<RatingRecord>& records,
                                  RatingScale m,
                                  std::optional<std::int64_t> n_known) {
  ObservedHistogram h;
  h.counts.assign(m.size(), 0);
  for (const RatingRecord& rec : records) {
    if (rec.rating < 1 || rec.rating > m.size()) {
      fail(ErrorCode::kBadScale, "rating " + std::to_string(rec.rating) +
                                     " is outside 1.." + std::to_string(m.size()));
    }
    ++h.counts[rec.rating - 1];
  }
  const auto count = static_cast<std::int64_t>(records.size());
  if (n_known) {
    if (*n_known < count) {
      fail(ErrorCode::kBadTotal, "n=" + std::to_string(*n_known) +
                                     " is smaller than the " +
                                     std::to_string(count) + " observed ratings");
    }
    h.unobserved = *n_known - count;
  }
  return h;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) fail(ErrorCode::kInvalidArgument, "cannot format value");
  return std::string(buf, ptr);
}

void write_curve_csv(const std::vector<CurvePoint>& points,
                     const std::filesystem::path& path) {
  std::string text = "q,aggregator,regret,ln_regret\n";
  for (const CurvePoint& pt : points) {
    text += format_double(pt.q);
    text += ',';
    text += pt.aggregator;
    text += ',';
    text += format_double(pt.regret);
    text += ',';
    if (auto ln = pt.ln_regret()) text += format_double(*ln);
    text += '\n';
  }
  write_text(path, text);
}

std::vector<CurvePoint> read_curve_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "q,aggregator,regret,ln_regret") {
    throw Error(ErrorCode::kParseError, "unexpected curve header", 1);
  }
  std::vector<CurvePoint> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 4) {
      throw Error(ErrorCode::kParseError, "expected 4 fields", line_no);
    }
    out.push_back({parse_double(fields[0], line_no), fields[1],
                   parse_double(fields[2], line_no)});
  }
  return out;
}

std::string report_json(const WorstCaseRecord& record) {
  json j;
  j["aggregator"] = std::string(record.aggregator.name());
  j["q"] = record.q;
  if (record.n.is_asymptotic()) {
    j["n"] = "asymptotic";
  } else {
    j["n"] = record.n.value();
  }
  j["family"] = std::string(family_name(record.family));
  j["p"] = structure_vector(record.worst_structure.p().probs());
  j["g"] = structure_vector(record.worst_structure.g().probs());
  j["regret"] = record.regret;
  j["grid"] = {{"parameter_step", record.grid.parameter_step},
               {"simplex_step", record.grid.simplex_step},
               {"box_step", record.grid.box_step}};
  if (record.parameter) {
    j["parameter"] = *record.parameter;
  } else {
    j["parameter"] = nullptr;
  }
  if (record.aggregator.bea) j["a_star"] = record.aggregator.bea->a_star;
  return j.dump(2) + "\n";
}

void write_report_json(const WorstCaseRecord& record,
                       const std::filesystem::path& path) {
  write_text(path, report_json(record));
}

WorstCaseRecord parse_report_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    const double q = j.at("q").get<double>();
    SampleSize n = SampleSize::asymptotic();
    if (j.at("n").is_string()) {
      if (j.at("n").get<std::string>() != "asymptotic") {
        fail(ErrorCode::kParseError, "n must be an integer or \"asymptotic\"");
      }
    } else {
      n = SampleSize::finite(j.at("n").get<int>());
    }
    AggregatorSpec spec;
    switch (parse_aggregator(j.at("aggregator").get<std::string>())) {
      case AggregatorKind::kAverage:
        spec = AggregatorSpec::average();
        break;
      case AggregatorKind::kSpectral:
        spec = AggregatorSpec::spectral();
        break;
      case AggregatorKind::kPolarizingAveraging:
        spec = AggregatorSpec::polarizing(q);
        break;
      case AggregatorKind::kBalancedExtremes:
        spec = AggregatorSpec::balanced(
            BeaParams{n.value(), q, j.at("a_star").get<double>()});
        break;
    }
    const json& grid = j.at("grid");
    SearchGrid sg{grid.at("parameter_step").get<double>(),
                  grid.at("simplex_step").get<double>(),
                  grid.at("box_step").get<double>()};
    std::optional<double> parameter;
    if (j.contains("parameter") && !j.at("parameter").is_null()) {
      parameter = j.at("parameter").get<double>();
    }
    InformationStructure theta(
        CategoricalDistribution(j.at("p").get<std::vector<double>>()),
        ParticipationProfile(j.at("g").get<std::vector<double>>(), q));
    return WorstCaseRecord{spec,
                           q,
                           n,
                           parse_family(j.at("family").get<std::string>()),
                           std::move(theta),
                           j.at("regret").get<double>(),
                           sg,
                           parameter};
  } catch (const json::exception& e) {
    fail(ErrorCode::kParseError, std::string("malformed report: ") + e.what());
  }
}

WorstCaseRecord read_report_json(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_report_json(buf.str());
}

void render_svg_line_chart(const std::vector<CurvePoint>& points,
                           const std::filesystem::path& path) {
  write_text(path, svg_line_chart(points));
}

}  // namespace robust_rating
