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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "robust_rating/data_io.hpp"
#include "robust_rating/error.hpp"
#include "robust_rating/validation.hpp"

namespace robust_rating {
namespace {

namespace fs = std::filesystem;

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("robust_rating_" + std::string(::testing::UnitTest::GetInstance()
                                                ->current_test_info()
                                                ->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }
  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

TEST(RemapTest, Mapping) {
  EXPECT_EQ(remap_rating(4), 1);
  EXPECT_EQ(remap_rating(5), 2);
  EXPECT_EQ(remap_rating(10), 7);
  for (int s = 1; s <= 4; ++s) EXPECT_EQ(remap_rating(s), 1);
  for (int s = 5; s <= 10; ++s) EXPECT_EQ(remap_rating(s), s - 3);
  for (int bad : {0, 11, -2}) {
    try {
      remap_rating(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
    }
  }
}

using ReadCsvTest = TempDir;

TEST_F(ReadCsvTest, RemapsRows) {
  const auto path = write("r.csv", "rating\n4\n5\n10\n");
  const auto recs = read_ratings_csv(path, {}, true);
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_EQ(recs[0].rating, 1);
  EXPECT_EQ(recs[1].rating, 2);
  EXPECT_EQ(recs[2].rating, 7);
}

TEST_F(ReadCsvTest, EmptyDataSection) {
  EXPECT_TRUE(read_ratings_csv(write("e.csv", "rating\n"), {}, false).empty());
}

TEST_F(ReadCsvTest, OutOfRangeCarriesLine) {
  const auto path = write("o.csv", "rating\n3\n11\n");
  try {
    read_ratings_csv(path, {}, true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST_F(ReadCsvTest, ParseErrorCarriesLine) {
  const auto path = write("p.csv", "id,rating\na,2\nb,x\n");
  try {
    read_ratings_csv(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST_F(ReadCsvTest, SkipsUnobservedAndReadsSource) {
  const auto path = write("s.csv", "id,score,channel\n1,3,web\n2,,web\n3,0,app\n4,\"2\",\"a,b\"\n");
  const auto recs = read_ratings_csv(path, {"score", "channel"}, false);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0], (RatingRecord{3, "web"}));
  EXPECT_EQ(recs[1], (RatingRecord{2, "a,b"}));
}

TEST_F(ReadCsvTest, MissingFileOrColumn) {
  try {
    read_ratings_csv(dir_ / "absent.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
  }
  EXPECT_THROW(read_ratings_csv(write("c.csv", "stars\n3\n")), Error);
}

TEST_F(ReadCsvTest, RoundTripIsLossless) {
  std::string text = "rating\n";
  std::vector<int> ratings;
  for (int i = 0; i < 40; ++i) {
    ratings.push_back(1 + (i * 7) % 10);
    text += std::to_string(ratings.back()) + "\n";
  }
  const auto recs = read_ratings_csv(write("rt.csv", text));
  ASSERT_EQ(recs.size(), ratings.size());
  for (std::size_t i = 0; i < recs.size(); ++i) EXPECT_EQ(recs[i].rating, ratings[i]);
}

TEST(BuildHistogramTest, Examples) {
  const std::vector<RatingRecord> recs = {{1, {}}, {1, {}}, {2, {}}};
  const auto known = build_histogram(recs, RatingScale(2), 5);
  EXPECT_EQ(known.counts, (std::vector<std::int64_t>{2, 1}));
  EXPECT_EQ(known.unobserved, 2);
  EXPECT_EQ(known.total(), 5);
  const auto unknown = build_histogram(recs, RatingScale(2));
  EXPECT_EQ(unknown.unobserved, 0);
  try {
    build_histogram({{3, {}}}, RatingScale(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadScale);
  }
  try {
    build_histogram(recs, RatingScale(2), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadTotal);
  }
}

using CurveCsvTest = TempDir;

TEST_F(CurveCsvTest, WritesHeaderAndRows) {
  const auto path = dir_ / "c.csv";
  write_curve_csv({{0.5, "avg", 0.02}, {0.5, "paa", 0.0}}, path);
  const std::string text = slurp(path);
  EXPECT_EQ(text.substr(0, text.find('\n')), "q,aggregator,regret,ln_regret");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
  EXPECT_NE(text.find("0.5,paa,0,\n"), std::string::npos);
  const auto back = read_curve_csv(path);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].regret, 0.02);
}

TEST_F(CurveCsvTest, EmptyListIsHeaderOnly) {
  const auto csv = dir_ / "e.csv";
  write_curve_csv({}, csv);
  EXPECT_EQ(slurp(csv), "q,aggregator,regret,ln_regret\n");
  const auto svg = dir_ / "e.svg";
  render_svg_line_chart({}, svg);
  EXPECT_EQ(slurp(svg).find("<polyline"), std::string::npos);
}

TEST_F(CurveCsvTest, FullPrecision) {
  const double v = 0.1 + 0.2;
  write_curve_csv({{0.3, "avg", v}}, dir_ / "f.csv");
  EXPECT_EQ(read_curve_csv(dir_ / "f.csv")[0].regret, v);
}

TEST(SvgTest, OnePolylinePerAggregator) {
  const std::vector<CurvePoint> pts = {
      {0.1, "avg", 0.5}, {0.1, "bea", 0.2}, {0.5, "avg", 0.3}, {0.5, "bea", 0.1}, {1.0, "avg", 0}};
  const std::string svg = svg_line_chart(pts);
  EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
  EXPECT_NE(svg.find("viewBox=\"0 0 800 600\""), std::string::npos);
  EXPECT_NE(svg.find(">q</text>"), std::string::npos);
  EXPECT_NE(svg.find(">ln regret</text>"), std::string::npos);
  std::size_t count = 0;
  for (auto pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1)) {
    ++count;
  }
  EXPECT_EQ(count, 2u);
}

using ReportJsonTest = TempDir;

TEST_F(ReportJsonTest, RoundTrips) {
  const auto theta = two_point_structures(RatingScale(3), 0.3, 0.123456789).first;
  const WorstCaseRecord finite{AggregatorSpec::balanced(BeaParams{10, 0.3, 0.8051234}),
                               0.3,
                               SampleSize::finite(10),
                               SearchFamily::kTwoPointMonotone,
                               theta,
                               0.32876543210987,
                               SearchGrid{},
                               0.123456789};
  const WorstCaseRecord asym{AggregatorSpec::polarizing(0.3), 0.3, SampleSize::asymptotic(),
                             SearchFamily::kGeneralGrid, theta, 1.0 / 7, SearchGrid{},
                             std::nullopt};
  for (const auto& rec : {finite, asym}) {
    const auto path = dir_ / "r.json";
    write_report_json(rec, path);
    const auto back = read_report_json(path);
    EXPECT_EQ(back.aggregator.kind, rec.aggregator.kind);
    EXPECT_EQ(back.n, rec.n);
    EXPECT_EQ(back.family, rec.family);
    EXPECT_NEAR(back.regret, rec.regret, 1e-12);
    EXPECT_NEAR(back.q, rec.q, 1e-12);
    EXPECT_EQ(back.grid, rec.grid);
    EXPECT_EQ(back.parameter.has_value(), rec.parameter.has_value());
    for (int r = 1; r <= 3; ++r) {
      EXPECT_NEAR(back.worst_structure.p().at(r), rec.worst_structure.p().at(r), 1e-12);
      EXPECT_NEAR(back.worst_structure.g().at(r), rec.worst_structure.g().at(r), 1e-12);
    }
    if (rec.aggregator.bea) {
      EXPECT_NEAR(back.aggregator.bea->a_star, rec.aggregator.bea->a_star, 1e-12);
    }
  }
  EXPECT_NE(report_json(asym).find("\"asymptotic\""), std::string::npos);
}

TEST(ReportJsonTest2, MalformedIsParseError) {
  try {
    parse_report_json("{\"aggregator\": \"avg\"}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
  }
}

TEST(FixtureTest, PipelineMatchesHandValues) {
  const fs::path fixture = fs::path(ROBUST_RATING_TEST_DATA) / "synthetic_ratings.csv";
  const FixtureExpectation want;
  const auto posted = read_ratings_csv(fixture, {"posted", std::nullopt}, true);
  const auto survey = read_ratings_csv(fixture, {"survey", "posted"}, true);
  ASSERT_EQ(static_cast<int>(survey.size()), want.n);
  const RatingScale m(want.m);
  const auto h = build_histogram(posted, m, want.n);
  EXPECT_EQ(h.counts, (std::vector<std::int64_t>{2, 0, 3, 6, 10, 6, 6}));
  EXPECT_EQ(h.unobserved, 17);
  EXPECT_NEAR(aggregate(AggregatorSpec::average(), h), want.avg, 1e-9);
  EXPECT_NEAR(aggregate(AggregatorSpec::polarizing(want.q), h), want.paa, 1e-9);
  // a* sits on a flat peak, so independent optimizers agree on it to ~1e-8.
  EXPECT_NEAR(aggregate(AggregatorSpec::balanced(want.n, m, want.q), h), want.bea, 1e-6);
}

}  // namespace
}  // namespace robust_rating
