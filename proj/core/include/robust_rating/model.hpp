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

// Value types shared by the whole library: rating scales, rating
// distributions, participation profiles and histograms.
//
// Ratings are 1-based in the domain (1..m) and 0-based in storage: entry i of
// every vector below belongs to rating i + 1.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace robust_rating {

inline constexpr double kProbabilitySumTolerance = 1e-12;

/// Number of rating categories m; ratings take the values 1..m.
class RatingScale {
 public:
  explicit RatingScale(int m);

  int size() const noexcept { return m_; }
  /// (m + 1) / 2, the output of every aggregator when nothing is known.
  double midpoint() const noexcept { return 0.5 * (m_ + 1); }
  /// Rating r maps to m + 1 - r.
  int reversed(int rating) const noexcept { return m_ + 1 - rating; }

  friend bool operator==(RatingScale, RatingScale) = default;

 private:
  int m_;
};

/// The true rating distribution p = (p_1..p_m).
class CategoricalDistribution {
 public:
  explicit CategoricalDistribution(std::vector<double> probs);

  std::span<const double> probs() const noexcept { return probs_; }
  /// Probability of rating `rating` (1-based).
  double at(int rating) const { return probs_.at(rating - 1); }
  RatingScale scale() const { return RatingScale(static_cast<int>(probs_.size())); }
  int size() const noexcept { return static_cast<int>(probs_.size()); }

  friend bool operator==(const CategoricalDistribution&,
                         const CategoricalDistribution&) = default;

 private:
  std::vector<double> probs_;
};

/// Participation probabilities g_r in [q, 1]: a rater whose rating is r
/// reports it with probability g_r.
class ParticipationProfile {
 public:
  ParticipationProfile(std::vector<double> g, double q);

  /// g_r = value for every rating.
  static ParticipationProfile uniform(int m, double value, double q);

  std::span<const double> probs() const noexcept { return g_; }
  double at(int rating) const { return g_.at(rating - 1); }
  double q() const noexcept { return q_; }
  int size() const noexcept { return static_cast<int>(g_.size()); }

  friend bool operator==(const ParticipationProfile&,
                         const ParticipationProfile&) = default;

 private:
  std::vector<double> g_;
  double q_;
};

/// Nature's strategy: the pair (p, g).
class InformationStructure {
 public:
  InformationStructure(CategoricalDistribution p, ParticipationProfile g);

  const CategoricalDistribution& p() const noexcept { return p_; }
  const ParticipationProfile& g() const noexcept { return g_; }
  RatingScale scale() const { return p_.scale(); }
  int size() const noexcept { return p_.size(); }

  friend bool operator==(const InformationStructure&,
                         const InformationStructure&) = default;

 private:
  CategoricalDistribution p_;
  ParticipationProfile g_;
};

/// Histogram of all n ratings, observed or not.
struct FullHistogram {
  std::vector<std::int64_t> counts;

  std::int64_t total() const;
  /// Mean rating of the sample; requires total() > 0.
  double mean() const;

  friend bool operator==(const FullHistogram&, const FullHistogram&) = default;
};

/// What the aggregator sees: n_u unobserved raters and n_1..n_m reported
/// ratings.
struct ObservedHistogram {
  std::int64_t unobserved = 0;
  std::vector<std::int64_t> counts;

  std::int64_t observed_total() const;
  std::int64_t total() const { return unobserved + observed_total(); }
  int size() const noexcept { return static_cast<int>(counts.size()); }
  /// Throws kInvalidArgument on negative entries or fewer than two ratings.
  void validate() const;

  friend bool operator==(const ObservedHistogram&,
                         const ObservedHistogram&) = default;
};

/// Normalized observed histogram p̂.
class EmpiricalDistribution {
 public:
  explicit EmpiricalDistribution(std::vector<double> probs);

  std::span<const double> probs() const noexcept { return probs_; }
  double at(int rating) const { return probs_.at(rating - 1); }
  int size() const noexcept { return static_cast<int>(probs_.size()); }
  RatingScale scale() const { return RatingScale(size()); }

 private:
  std::vector<double> probs_;
};

/// Σ r·p_r.
double dist_mean(const CategoricalDistribution& p);
/// Σ r²·p_r − μ².
double dist_variance(const CategoricalDistribution& p);

/// Per-rater bucket probabilities, m + 1 entries: entry r − 1 is the
/// probability of observing rating r (p_r·g_r), the last entry the probability
/// of not observing anything (Σ p_r(1 − g_r)).
std::vector<double> observed_marginal(const InformationStructure& theta);

/// p̂_r = n_r / Σ n_j. Throws kAllUnobserved when nothing was reported.
EmpiricalDistribution empirical_from_observed(const ObservedHistogram& h);

/// Mean of an arbitrary nonnegative weight vector over ratings 1..size.
double weighted_rating_mean(std::span<const double> weights);

}  // namespace robust_rating
