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

#include <functional>

#include "robust_rating/error.hpp"
#include "robust_rating/model.hpp"

namespace robust_rating {
namespace {

void expect_code(ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(RatingScaleTest, RejectsFewerThanTwoLevels) {
  expect_code(ErrorCode::kInvalidArgument, [] { RatingScale(1); });
  EXPECT_EQ(RatingScale(5).midpoint(), 3.0);
  EXPECT_EQ(RatingScale(5).reversed(2), 4);
}

TEST(DistributionTest, Mean) {
  EXPECT_DOUBLE_EQ(dist_mean(CategoricalDistribution({1.0, 0.0})), 1.0);
  EXPECT_DOUBLE_EQ(dist_mean(CategoricalDistribution({0.5, 0.5})), 1.5);
  EXPECT_NEAR(dist_mean(CategoricalDistribution({0.2, 0.3, 0.5})), 2.3, 1e-15);
}

TEST(DistributionTest, Variance) {
  EXPECT_DOUBLE_EQ(dist_variance(CategoricalDistribution({1.0, 0.0})), 0.0);
  EXPECT_DOUBLE_EQ(dist_variance(CategoricalDistribution({0.5, 0.5})), 0.25);
  EXPECT_NEAR(dist_variance(CategoricalDistribution({2.0 / 3, 1.0 / 3})), 2.0 / 9,
              1e-15);
}

TEST(DistributionTest, RejectsBadProbabilities) {
  expect_code(ErrorCode::kInvalidArgument, [] { CategoricalDistribution({0.5, 0.6}); });
  expect_code(ErrorCode::kInvalidArgument, [] { CategoricalDistribution({-0.1, 1.1}); });
  expect_code(ErrorCode::kInvalidArgument, [] { CategoricalDistribution({1.0}); });
}

TEST(ParticipationTest, EnforcesLowerBound) {
  expect_code(ErrorCode::kInvalidArgument, [] { ParticipationProfile({0.4, 1.0}, 0.5); });
  expect_code(ErrorCode::kInvalidArgument, [] { ParticipationProfile({1.0, 1.0}, 0.0); });
  expect_code(ErrorCode::kInvalidArgument, [] { ParticipationProfile({1.0, 1.1}, 0.5); });
  EXPECT_NO_THROW(ParticipationProfile({0.5, 1.0}, 0.5));
}

TEST(StructureTest, SizesMustMatch) {
  expect_code(ErrorCode::kInvalidArgument, [] {
    InformationStructure(CategoricalDistribution({0.5, 0.5}),
                         ParticipationProfile({1.0, 1.0, 1.0}, 1.0));
  });
}

TEST(ObservedMarginalTest, Examples) {
  auto marginal = [](std::vector<double> p, std::vector<double> g, double q) {
    return observed_marginal(InformationStructure(CategoricalDistribution(std::move(p)),
                                                  ParticipationProfile(std::move(g), q)));
  };
  EXPECT_EQ(marginal({0.5, 0.5}, {1, 1}, 1.0), (std::vector<double>{0.5, 0.5, 0.0}));
  EXPECT_EQ(marginal({0.5, 0.5}, {1, 0.5}, 0.5), (std::vector<double>{0.5, 0.25, 0.25}));
  const auto third = marginal({2.0 / 3, 1.0 / 3}, {0.5, 1}, 0.5);
  for (double v : third) EXPECT_NEAR(v, 1.0 / 3, 1e-15);
}

TEST(EmpiricalTest, NormalizesCounts) {
  ObservedHistogram h{4, {3, 1}};
  const auto p = empirical_from_observed(h);
  EXPECT_DOUBLE_EQ(p.at(1), 0.75);
  EXPECT_DOUBLE_EQ(p.at(2), 0.25);
  const auto q = empirical_from_observed(ObservedHistogram{0, {2, 3, 5}});
  EXPECT_DOUBLE_EQ(q.at(1), 0.2);
  EXPECT_DOUBLE_EQ(q.at(2), 0.3);
  EXPECT_DOUBLE_EQ(q.at(3), 0.5);
  expect_code(ErrorCode::kAllUnobserved,
              [] { empirical_from_observed(ObservedHistogram{3, {0, 0}}); });
}

TEST(HistogramTest, Totals) {
  ObservedHistogram h{2, {1, 4}};
  EXPECT_EQ(h.observed_total(), 5);
  EXPECT_EQ(h.total(), 7);
  FullHistogram f{{1, 1, 2}};
  EXPECT_EQ(f.total(), 4);
  EXPECT_DOUBLE_EQ(f.mean(), 2.25);
  expect_code(ErrorCode::kInvalidArgument, [] { ObservedHistogram{-1, {1, 1}}.validate(); });
}

}  // namespace
}  // namespace robust_rating
