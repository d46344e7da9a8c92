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

// Randomized invariants checked against the reference oracles.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "robust_rating/adversary.hpp"
#include "robust_rating/aggregators.hpp"
#include "robust_rating/oracles.hpp"
#include "robust_rating/regret.hpp"

namespace robust_rating {
namespace {

std::vector<double> random_simplex(std::mt19937_64& rng, int m, double zero_chance) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> p(m);
  double total = 0.0;
  for (double& v : p) total += (v = unit(rng) < zero_chance ? 0.0 : unit(rng));
  if (total == 0.0) {
    p[0] = 1.0;
    total = 1.0;
  }
  for (double& v : p) v /= total;
  return p;
}

TEST(PropertyTest, PaaBoundsAreExactExtremes) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const int m = 2 + i % 5;
    const double q = 0.02 + 0.98 * unit(rng);
    const auto p = random_simplex(rng, m, 0.2);
    const auto b = paa_bounds(EmpiricalDistribution(p), q);
    const auto want = oracle::extreme_monotone_range(p, q);
    EXPECT_NEAR(b.lower, want.lower, 1e-12);
    EXPECT_NEAR(b.upper, want.upper, 1e-12);
    EXPECT_LE(b.lower, b.upper + 1e-15);
  }
}

TEST(PropertyTest, PaaMoreConservativeAsQShrinks) {
  // Smaller q pulls the output toward the midpoint, so the distance from the
  // midpoint grows with q, reaching the plain average at q = 1.
  for (double p1 : {0.1, 0.3, 0.45, 0.6, 0.8, 0.95}) {
    const EmpiricalDistribution hat({p1, 1.0 - p1});
    double prev = 0.0;
    for (int k = 1; k <= 10; ++k) {
      const double dist = std::abs(paa(hat, k / 10.0) - 1.5);
      EXPECT_GE(dist, prev - 1e-15) << "p1=" << p1 << " q=" << k / 10.0;
      prev = dist;
    }
    EXPECT_NEAR(prev, std::abs(0.5 - p1), 1e-15);
  }
}

TEST(PropertyTest, AsymptoticPaaBelowClosedFormOnGrid) {
  for (int m : {2, 3}) {
    for (double q : {0.1, 0.5, 0.9}) {
      const auto spec = AggregatorSpec::polarizing(q);
      const double bound = asymptotic_paa_regret(RatingScale(m), q);
      for (const auto& c :
           family_candidates(SearchFamily::kGeneralGrid, RatingScale(m), q, SearchGrid{})) {
        EXPECT_LE(asymptotic_loss(spec, c.structure), bound + 1e-9);
      }
    }
  }
}

TEST(PropertyTest, EveryAggregatorMeetsLowerBound) {
  const int n = 8, m = 3;
  for (double q : {0.3, 0.7}) {
    const double lb = lower_bound(n, RatingScale(m), q).value;
    for (const auto& spec : {AggregatorSpec::average(), AggregatorSpec::spectral(),
                             AggregatorSpec::polarizing(q)}) {
      const auto rec = worst_case(spec, SampleSize::finite(n), RatingScale(m), q,
                                  default_families());
      EXPECT_GE(rec.regret, lb - 1e-6) << spec.name() << " q=" << q;
    }
  }
}

TEST(PropertyTest, ReversalSymmetry) {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<int> count(0, 5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 60; ++i) {
    const int m = 2 + i % 4;
    const double q = 0.1 + 0.9 * unit(rng);
    ObservedHistogram h;
    h.counts.resize(m);
    for (auto& c : h.counts) c = count(rng);
    h.unobserved = count(rng);
    if (h.total() == 0) h.unobserved = 1;
    ObservedHistogram r = h;
    std::reverse(r.counts.begin(), r.counts.end());
    const int n = static_cast<int>(h.total());
    for (const auto& spec : {AggregatorSpec::average(), AggregatorSpec::polarizing(q),
                             AggregatorSpec::balanced(n, RatingScale(m), q)}) {
      EXPECT_NEAR(aggregate(spec, h) + aggregate(spec, r), m + 1.0, 1e-9) << spec.name();
    }
  }
}

TEST(PropertyTest, AggregatesStayOnScale) {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<int> count(0, 9);
  for (int i = 0; i < 100; ++i) {
    const int m = 2 + i % 6;
    ObservedHistogram h;
    h.counts.resize(m);
    for (auto& c : h.counts) c = count(rng);
    h.unobserved = count(rng);
    if (h.total() == 0) h.counts[0] = 1;
    const int n = static_cast<int>(h.total());
    for (const auto& spec :
         {AggregatorSpec::average(), AggregatorSpec::spectral(), AggregatorSpec::polarizing(0.4),
          AggregatorSpec::balanced(n, RatingScale(m), 0.4)}) {
      const double v = aggregate(spec, h);
      EXPECT_GE(v, 1.0 - 1e-12);
      EXPECT_LE(v, m + 1e-12);
    }
  }
}

TEST(PropertyTest, LossMatchesRaterLevelForKnownN) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 6; ++i) {
    const int m = 3, n = 2 + i % 4;
    const double q = 0.1 + 0.8 * unit(rng);
    std::vector<double> g(m);
    for (double& v : g) v = q + (1 - q) * unit(rng);
    const InformationStructure theta(CategoricalDistribution(random_simplex(rng, m, 0.3)),
                                     ParticipationProfile(g, q));
    const auto spec = AggregatorSpec::balanced(n, RatingScale(m), q);
    EXPECT_NEAR(exact_loss({spec, theta, SampleSize::finite(n)}),
                oracle::rater_level_loss(spec, theta, n), 1e-12);
  }
}

}  // namespace
}  // namespace robust_rating
