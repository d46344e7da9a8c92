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

#include <cmath>

#include "robust_rating/sampling.hpp"

namespace robust_rating {
namespace {

TEST(SampleFullTest, Examples) {
  EXPECT_EQ(sample_full(CategoricalDistribution({1, 0}), 5, {1, 0}).counts,
            (std::vector<std::int64_t>{5, 0}));
  EXPECT_EQ(sample_full(CategoricalDistribution({0.5, 0.5}), 0, {1, 0}).counts,
            (std::vector<std::int64_t>{0, 0}));
  const auto big = sample_full(CategoricalDistribution({0.5, 0.5}), 100'000, {9, 0});
  EXPECT_EQ(big.total(), 100'000);
  EXPECT_NEAR(big.counts[0] / 1e5, 0.5, 0.01);
}

TEST(ThinTest, FullParticipationKeepsEverything) {
  const FullHistogram full{{3, 4, 5}};
  const auto obs = thin(full, ParticipationProfile({1, 1, 1}, 1.0), {2, 0});
  EXPECT_EQ(obs.counts, full.counts);
  EXPECT_EQ(obs.unobserved, 0);
}

TEST(ThinTest, HalfParticipationConcentrates) {
  const FullHistogram full{{100'000, 100'000}};
  const auto obs = thin(full, ParticipationProfile({0.5, 0.5}, 0.5), {3, 0});
  for (auto c : obs.counts) EXPECT_NEAR(c, 50'000, 500);
  EXPECT_EQ(obs.total(), 200'000);
}

TEST(SimulateTest, DeterministicPerSeedAndStream) {
  const InformationStructure theta(CategoricalDistribution({0.3, 0.3, 0.4}),
                                   ParticipationProfile({0.4, 1, 0.7}, 0.4));
  const auto a = simulate(theta, 50, {11, 3});
  const auto b = simulate(theta, 50, {11, 3});
  EXPECT_EQ(a.full, b.full);
  EXPECT_EQ(a.observed, b.observed);
  const auto c = simulate(theta, 50, {11, 4});
  EXPECT_FALSE(a.full == c.full && a.observed == c.observed);
}

TEST(SimulateTest, FullParticipationObservesAll) {
  const InformationStructure theta(CategoricalDistribution({0.3, 0.7}),
                                   ParticipationProfile({1, 1}, 1.0));
  const auto s = simulate(theta, 40, {5, 0});
  EXPECT_EQ(s.observed.counts, s.full.counts);
  EXPECT_EQ(s.observed.unobserved, 0);
}

TEST(SimulateTest, WorstPairObservedMarginal) {
  const InformationStructure theta(CategoricalDistribution({2.0 / 3, 1.0 / 3}),
                                   ParticipationProfile({0.5, 1}, 0.5));
  const auto s = simulate(theta, 100'000, {8, 0});
  const double seen = static_cast<double>(s.observed.observed_total());
  EXPECT_NEAR(s.observed.counts[0] / seen, 0.5, 0.01);
  EXPECT_NEAR(s.observed.counts[1] / seen, 0.5, 0.01);
}

TEST(StreamEngineTest, StreamsDiffer) {
  StreamEngine a({1, 0}), b({1, 1}), c({2, 0});
  const auto x = a(), y = b(), z = c();
  EXPECT_NE(x, y);
  EXPECT_NE(x, z);
  StreamEngine again({1, 0});
  EXPECT_EQ(again(), x);
}

}  // namespace
}  // namespace robust_rating
