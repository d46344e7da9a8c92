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

// Rating aggregators:
//
//   avg  simple average of the observed ratings
//   spe  spectral baseline, which for a single item is the root mean square
//   bea  Balanced Extremes Aggregator (sample size n known)
//   paa  Polarizing-Averaging Aggregator (sample size unknown)
//
// BEA imputes every unobserved rating as α·1 + (1 − α)·m, where α is the
// posterior weight of the "unobserved raters all rated 1" structure given the
// gap n_1 − n_m. Its parameter a* is the maximizer of the lower-bound
// objective J(a) and depends only on (n, m, q), so it is solved once and
// cached in BeaParams.
//
// PAA outputs the midpoint of the smallest and largest true mean consistent
// with the observed empirical distribution p̂ when every participation
// probability lies in [q, 1].

#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string_view>
#include <tuple>

#include "robust_rating/model.hpp"

namespace robust_rating {

enum class AggregatorKind {
  kAverage,
  kSpectral,
  kBalancedExtremes,
  kPolarizingAveraging,
};

/// Short CLI name: avg, spe, bea, paa.
std::string_view aggregator_name(AggregatorKind kind);
/// Inverse of aggregator_name; throws kInvalidArgument on unknown names.
AggregatorKind parse_aggregator(std::string_view name);

struct BeaParams {
  int n = 1;
  double q = 1.0;
  double a_star = 1.0;

  /// Checks n >= 1, q in (0, 1] and a_star in [0, 1].
  void validate() const;
};

struct PaaBounds {
  int k1 = 1;
  int k2 = 1;
  double lower = 1.0;
  double upper = 1.0;
};

struct AStarSolution {
  double a_star = 1.0;
  double value = 0.0;
};

/// Identifies one aggregator with its parameters. `q` is unused by avg/spe.
struct AggregatorSpec {
  AggregatorKind kind = AggregatorKind::kAverage;
  double q = 1.0;
  std::optional<BeaParams> bea;

  static AggregatorSpec average();
  static AggregatorSpec spectral();
  static AggregatorSpec polarizing(double q);
  static AggregatorSpec balanced(const BeaParams& params);
  /// BEA with a* taken from the shared cache.
  static AggregatorSpec balanced(int n, RatingScale m, double q);

  std::string_view name() const { return aggregator_name(kind); }
};

double simple_average(const ObservedHistogram& h, RatingScale m);
double spectral(const ObservedHistogram& h, RatingScale m);

/// The lower-bound objective J(a), summing over s reported 1s and t reported
/// m's with s + t <= n.
double bea_objective(double a, int n, RatingScale m, double q);

/// Maximizes J over [0, 1]: grid of step 1e-3, then golden-section refinement
/// around the best cell. Ties go to the largest a.
AStarSolution solve_a_star(int n, RatingScale m, double q);

/// Posterior weight of rating 1 for the unobserved raters, driven by
/// d = n1 − nm. Exactly 1/2 when d = 0; zero bases use their limits.
double bea_alpha(std::int64_t n1, std::int64_t nm, double a_star, double q);

/// Throws kInconsistentCounts unless n_u + Σ n_r == params.n.
double bea(const ObservedHistogram& h, const BeaParams& params, RatingScale m);

/// Largest k with Σ_{i<k}(i−k)p̂_i/q + Σ_{i>k}(i−k)p̂_i >= 0.
int paa_k1(const EmpiricalDistribution& p_hat, double q);
/// Largest k with Σ_{i<k}(i−k)p̂_i + Σ_{i>k}(i−k)p̂_i/q >= 0.
int paa_k2(const EmpiricalDistribution& p_hat, double q);
PaaBounds paa_bounds(const EmpiricalDistribution& p_hat, double q);
double paa(const EmpiricalDistribution& p_hat, double q);

/// Applies any aggregator to an observed histogram. avg, spe and paa return
/// the scale midpoint when nothing was reported; bea requires the histogram
/// total to match its n.
double aggregate(const AggregatorSpec& spec, const ObservedHistogram& h);
/// Asymptotic form: applies avg, spe or paa to p̂ directly. bea is rejected.
double aggregate_empirical(const AggregatorSpec& spec,
                           const EmpiricalDistribution& p_hat);

/// Idempotent memo of solve_a_star keyed by (n, m, q). Safe to share.
class AStarCache {
 public:
  AStarSolution get(int n, RatingScale m, double q);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::tuple<int, int, double>, AStarSolution> entries_;
};

AStarCache& shared_a_star_cache();

namespace detail {

// Hot-path variants over raw counts/weights. `weights` may be unnormalized;
// every PAA quantity is invariant to scaling.
PaaBounds paa_bounds_weights(std::span<const double> weights, double q);
double aggregate_counts(const AggregatorSpec& spec,
                        std::span<const std::int64_t> counts,
                        std::int64_t unobserved);

}  // namespace detail
}  // namespace robust_rating
