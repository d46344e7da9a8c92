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
#include <vector>

#include "commands.hpp"
#include "json.hpp"
#include "robust_rating/data_io.hpp"

namespace robust_rating::cli {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "robust-rating");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<CurvePoint> parse_curve(const std::string& text) {
  const fs::path p = fs::temp_directory_path() / "robust_rating_cli_curve.csv";
  std::ofstream(p) << text;
  auto pts = read_curve_csv(p);
  fs::remove(p);
  return pts;
}

TEST(CliAggregateTest, Examples) {
  auto r = run({"aggregate", "--m", "2", "--q", "0.5", "--aggregators", "paa", "--counts", "1,1"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "paa=1.500000\n");
  r = run({"aggregate", "--m", "3", "--q", "0.5", "--aggregators", "paa", "--counts", "2,3,5"});
  EXPECT_EQ(r.out, "paa=2.300000\n");
  r = run({"aggregate", "--m", "2", "--q", "0.5", "--n", "5", "--aggregators", "bea",
           "--a-star", "0.6", "--counts", "2,1"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "bea=1.428571\n");
}

TEST(CliAggregateTest, InputFile) {
  const fs::path p = fs::temp_directory_path() / "robust_rating_cli_in.csv";
  std::ofstream(p) << "rating\n4\n5\n10\n";
  const auto r = run({"aggregate", "--m", "7", "--q", "0.5", "--aggregators", "avg",
                      "--input", p.string(), "--remap"});
  fs::remove(p);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "avg=3.333333\n");
}

TEST(CliAggregateTest, UsageErrors) {
  auto r = run({"aggregate", "--m", "2", "--q", "0.5", "--aggregators", "bea", "--counts", "1,1"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
  r = run({"aggregate", "--m", "2", "--q", "1.5", "--counts", "1,1"});
  EXPECT_EQ(r.code, kExitUsage);
  r = run({"aggregate", "--m", "2", "--q", "0.5", "--counts", "1,1", "--aggregators", "mode"});
  EXPECT_EQ(r.code, kExitUsage);
  r = run({"frobnicate"});
  EXPECT_EQ(r.code, kExitUsage);
}

TEST(CliAggregateTest, IoErrors) {
  const auto r = run({"aggregate", "--m", "2", "--q", "0.5", "--input", "/nonexistent/x.csv"});
  EXPECT_EQ(r.code, kExitIo);
}

TEST(CliCurveTest, RowCount) {
  const auto r = run({"curve", "--n", "10", "--m", "3", "--q-grid", "0.3:0.5:0.2",
                      "--aggregators", "avg,bea", "--grid-step", "0.01"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto pts = parse_curve(r.out);
  ASSERT_EQ(pts.size(), 6u);
  EXPECT_EQ(pts[2].aggregator, "lower_bound");
}

TEST(CliCurveTest, AsymptoticClosedForm) {
  const auto r = run({"curve", "--asymptotic", "--m", "3", "--q-grid", "0.5:0.5:0.1",
                      "--aggregators", "paa", "--family", "two-point"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto pts = parse_curve(r.out);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_NEAR(pts[0].regret, 1.0 / 9, 1e-9);
}

TEST(CliCurveTest, NoBiasRows) {
  const auto r = run({"curve", "--asymptotic", "--m", "3", "--q-grid", "1:1:0.1",
                      "--aggregators", "paa,avg"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("1,paa,0,\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("1,avg,0,\n"), std::string::npos) << r.out;
}

TEST(CliCurveTest, CapSuggestsTrials) {
  const auto r = run({"curve", "--n", "2000", "--m", "3", "--q-grid", "0.5:0.5:0.1",
                      "--aggregators", "avg", "--family", "general"});
  EXPECT_EQ(r.code, kExitComputation);
  EXPECT_NE(r.err.find("--trials"), std::string::npos) << r.err;
}

TEST(CliCurveTest, WritesFiles) {
  const fs::path csv = fs::temp_directory_path() / "robust_rating_cli_c.csv";
  const fs::path svg = fs::temp_directory_path() / "robust_rating_cli_c.svg";
  const auto r = run({"curve", "--n", "5", "--m", "3", "--q-grid", "0.2:0.6:0.2",
                      "--aggregators", "avg,paa", "--grid-step", "0.05", "--output",
                      csv.string(), "--svg", svg.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(read_curve_csv(csv).size(), 9u);
  EXPECT_TRUE(fs::exists(svg));
  fs::remove(csv);
  fs::remove(svg);
}

TEST(CliLowerBoundTest, Example) {
  const auto r = run({"lower-bound", "--n", "1", "--m", "2", "--q", "0.5"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "value=0.125000 a*=1.000\n");
}

TEST(CliWorstCaseTest, UnknownNPair) {
  const auto r = run({"worst-case", "--aggregators", "paa", "--asymptotic", "--m", "2",
                      "--q", "0.5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j.at("regret").get<double>(), 1.0 / 36, 1e-6);
  EXPECT_EQ(j.at("n").get<std::string>(), "asymptotic");
  const auto p = j.at("p").get<std::vector<double>>();
  EXPECT_NEAR(std::max(p[0], p[1]), 2.0 / 3, 1e-3);
}

TEST(CliWorstCaseTest, BeaNeedsFiniteN) {
  const auto r = run({"worst-case", "--aggregators", "bea", "--asymptotic", "--m", "2",
                      "--q", "0.5"});
  EXPECT_EQ(r.code, kExitUsage);
}

TEST(CliSimulateTest, Deterministic) {
  const std::vector<std::string> args = {"simulate", "--p", "0.5,0.5", "--g", "1,0.5",
                                         "--q", "0.5", "--n", "100", "--seed", "4"};
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "rating,full_count,observed_count");
}

TEST(CliSelftestTest, PassesOnCorrectBuild) {
  const auto r = run({"selftest", "--input",
                      (fs::path(ROBUST_RATING_TEST_DATA) / "synthetic_ratings.csv").string()});
  EXPECT_EQ(r.code, kExitOk) << r.out;
}

}  // namespace
}  // namespace robust_rating::cli
