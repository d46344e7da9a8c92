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

#include "robust_rating/model.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "robust_rating/error.hpp"

namespace robust_rating {
namespace {

void check_probability_vector(std::span<const double> probs,
                              const char* what) {
  require(probs.size() >= 2,
          std::string(what) + " needs at least two rating categories");
  double sum = 0.0;
  for (double x : probs) {
    require(std::isfinite(x) && x >= 0.0 && x <= 1.0,
            std::string(what) + " entries must lie in [0, 1]");
    sum += x;
  }
  require(std::abs(sum - 1.0) <= kProbabilitySumTolerance,
          std::string(what) + " must sum to 1 (got " + std::to_string(sum) +
              ")");
}

}  // namespace

RatingScale::RatingScale(int m) : m_(m) {
  require(m >= 2, "rating scale needs m >= 2");
}

CategoricalDistribution::CategoricalDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
  check_probability_vector(probs_, "rating distribution");
}

ParticipationProfile::ParticipationProfile(std::vector<double> g, double q)
    : g_(std::move(g)), q_(q) {
  require(std::isfinite(q) && q > 0.0 && q <= 1.0, "q must lie in (0, 1]");
  require(g_.size() >= 2, "participation profile needs m >= 2");
  for (double x : g_) {
    require(std::isfinite(x) && x >= q && x <= 1.0,
            "participation probabilities must lie in [q, 1]");
  }
}

ParticipationProfile ParticipationProfile::uniform(int m, double value,
                                                   double q) {
  require(m >= 2, "participation profile needs m >= 2");
  return ParticipationProfile(std::vector<double>(m, value), q);
}

InformationStructure::InformationStructure(CategoricalDistribution p,
                                           ParticipationProfile g)
    : p_(std::move(p)), g_(std::move(g)) {
  require(p_.size() == g_.size(),
          "rating distribution and participation profile differ in size");
}

std::int64_t FullHistogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

double FullHistogram::mean() const {
  const std::int64_t n = total();
  require(n > 0, "mean of an empty histogram");
  double acc = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    acc += static_cast<double>(i + 1) * static_cast<double>(counts[i]);
  }
  return acc / static_cast<double>(n);
}

std::int64_t ObservedHistogram::observed_total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

void ObservedHistogram::validate() const {
  require(counts.size() >= 2, "histogram needs at least two ratings");
  require(unobserved >= 0, "unobserved count must be nonnegative");
  for (std::int64_t c : counts) require(c >= 0, "counts must be nonnegative");
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
  check_probability_vector(probs_, "empirical distribution");
}

double dist_mean(const CategoricalDistribution& p) {
  double mu = 0.0;
  const auto probs = p.probs();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    mu += static_cast<double>(i + 1) * probs[i];
  }
  return mu;
}

double dist_variance(const CategoricalDistribution& p) {
  const double mu = dist_mean(p);
  double var = 0.0;
  const auto probs = p.probs();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double d = static_cast<double>(i + 1) - mu;
    var += d * d * probs[i];
  }
  return var;
}

std::vector<double> observed_marginal(const InformationStructure& theta) {
  const auto p = theta.p().probs();
  const auto g = theta.g().probs();
  std::vector<double> buckets(p.size() + 1, 0.0);
  double unobserved = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    buckets[i] = p[i] * g[i];
    unobserved += p[i] * (1.0 - g[i]);
  }
  buckets.back() = unobserved;
  return buckets;
}

EmpiricalDistribution empirical_from_observed(const ObservedHistogram& h) {
  h.validate();
  const std::int64_t n_obs = h.observed_total();
  if (n_obs == 0) {
    throw Error(ErrorCode::kAllUnobserved,
                "no ratings observed; empirical distribution undefined");
  }
  std::vector<double> probs(h.counts.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    probs[i] = static_cast<double>(h.counts[i]) / static_cast<double>(n_obs);
  }
  return EmpiricalDistribution(std::move(probs));
}

double weighted_rating_mean(std::span<const double> weights) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    num += static_cast<double>(i + 1) * weights[i];
    den += weights[i];
  }
  return num / den;
}

}  // namespace robust_rating
