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

#include "robust_rating/aggregators.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "robust_rating/error.hpp"

namespace robust_rating {
namespace {

constexpr double kAGridStep = 1e-3;
constexpr int kGoldenIterations = 60;

void check_q(double q) {
  require(std::isfinite(q) && q > 0.0 && q <= 1.0, "q must lie in (0, 1]");
}

// log(x) * k with the convention x^0 = 1, so 0 * log(0) contributes 0.
double log_pow(double x, std::int64_t k) {
  if (k == 0) return 0.0;
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(k) * std::log(x);
}

std::vector<double> log_factorials(int n) {
  std::vector<double> table(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 1; k <= n; ++k) table[k] = table[k - 1] + std::log(k);
  return table;
}

double observed_sum(std::span<const std::int64_t> counts) {
  double acc = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    acc += static_cast<double>(i + 1) * static_cast<double>(counts[i]);
  }
  return acc;
}

std::int64_t observed_count(std::span<const std::int64_t> counts) {
  std::int64_t acc = 0;
  for (std::int64_t c : counts) acc += c;
  return acc;
}

double balanced_from_counts(std::span<const std::int64_t> counts,
                            std::int64_t unobserved, const BeaParams& params) {
  const std::int64_t n_obs = observed_count(counts);
  if (n_obs + unobserved != params.n) {
    throw Error(ErrorCode::kInconsistentCounts,
                "histogram holds " + std::to_string(n_obs + unobserved) +
                    " raters but BEA was configured for n = " +
                    std::to_string(params.n));
  }
  const double m = static_cast<double>(counts.size());
  const double alpha =
      bea_alpha(counts.front(), counts.back(), params.a_star, params.q);
  const double unobserved_mean = alpha + (1.0 - alpha) * m;
  return (observed_sum(counts) +
          static_cast<double>(unobserved) * unobserved_mean) /
         static_cast<double>(params.n);
}

}  // namespace

std::string_view aggregator_name(AggregatorKind kind) {
  switch (kind) {
    case AggregatorKind::kAverage: return "avg";
    case AggregatorKind::kSpectral: return "spe";
    case AggregatorKind::kBalancedExtremes: return "bea";
    case AggregatorKind::kPolarizingAveraging: return "paa";
  }
  return "?";
}

AggregatorKind parse_aggregator(std::string_view name) {
  if (name == "avg") return AggregatorKind::kAverage;
  if (name == "spe") return AggregatorKind::kSpectral;
  if (name == "bea") return AggregatorKind::kBalancedExtremes;
  if (name == "paa") return AggregatorKind::kPolarizingAveraging;
  fail(ErrorCode::kInvalidArgument,
       "unknown aggregator '" + std::string(name) + "' (avg, spe, bea, paa)");
}

void BeaParams::validate() const {
  require(n >= 1, "BEA needs n >= 1");
  check_q(q);
  require(a_star >= 0.0 && a_star <= 1.0, "a* must lie in [0, 1]");
}

AggregatorSpec AggregatorSpec::average() {
  return {AggregatorKind::kAverage, 1.0, std::nullopt};
}

AggregatorSpec AggregatorSpec::spectral() {
  return {AggregatorKind::kSpectral, 1.0, std::nullopt};
}

AggregatorSpec AggregatorSpec::polarizing(double q) {
  check_q(q);
  return {AggregatorKind::kPolarizingAveraging, q, std::nullopt};
}

AggregatorSpec AggregatorSpec::balanced(const BeaParams& params) {
  params.validate();
  return {AggregatorKind::kBalancedExtremes, params.q, params};
}

AggregatorSpec AggregatorSpec::balanced(int n, RatingScale m, double q) {
  const AStarSolution solution = shared_a_star_cache().get(n, m, q);
  return balanced(BeaParams{n, q, solution.a_star});
}

double simple_average(const ObservedHistogram& h, RatingScale m) {
  h.validate();
  require(h.size() == m.size(), "histogram does not match the rating scale");
  return detail::aggregate_counts(AggregatorSpec::average(), h.counts,
                                  h.unobserved);
}

double spectral(const ObservedHistogram& h, RatingScale m) {
  h.validate();
  require(h.size() == m.size(), "histogram does not match the rating scale");
  return detail::aggregate_counts(AggregatorSpec::spectral(), h.counts,
                                  h.unobserved);
}

double bea_objective(double a, int n, RatingScale m, double q) {
  require(a >= 0.0 && a <= 1.0, "a must lie in [0, 1]");
  require(n >= 1, "n must be >= 1");
  check_q(q);
  const std::vector<double> log_fact = log_factorials(n);
  const double spread = static_cast<double>(m.size() - 1);
  double total = 0.0;
  for (int t = 0; t <= n; ++t) {
    for (int s = 0; s + t <= n; ++s) {
      const int rest = n - s - t;
      if (rest == 0) continue;
      // C(n, t)·C(n − t, s) = n! / (t! s! rest!)
      const double log_weight = log_fact[n] - log_fact[t] - log_fact[s] -
                                log_fact[rest] + log_pow(a, n - t) +
                                log_pow(1.0 - a, t) + log_pow(q, s) +
                                log_pow(1.0 - q, rest);
      if (!std::isfinite(log_weight)) continue;
      const double miss = 1.0 - bea_alpha(s, t, a, q);
      const double gap = static_cast<double>(rest) * spread * miss /
                         static_cast<double>(n);
      total += std::exp(log_weight) * gap * gap;
    }
  }
  return total;
}

AStarSolution solve_a_star(int n, RatingScale m, double q) {
  require(n >= 1, "n must be >= 1");
  check_q(q);
  const int cells = static_cast<int>(std::lround(1.0 / kAGridStep));
  int best_index = 0;
  double best_value = -1.0;
  for (int i = 0; i <= cells; ++i) {
    const double a = static_cast<double>(i) / cells;
    const double value = bea_objective(a, n, m, q);
    if (value >= best_value) {
      best_value = value;
      best_index = i;
    }
  }
  AStarSolution best{static_cast<double>(best_index) / cells, best_value};

  double lo = static_cast<double>(std::max(best_index - 1, 0)) / cells;
  double hi = static_cast<double>(std::min(best_index + 1, cells)) / cells;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = bea_objective(x1, n, m, q);
  double f2 = bea_objective(x2, n, m, q);
  for (int it = 0; it < kGoldenIterations; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = bea_objective(x2, n, m, q);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = bea_objective(x1, n, m, q);
    }
  }
  const double refined = 0.5 * (lo + hi);
  const double refined_value = bea_objective(refined, n, m, q);
  if (refined_value > best.value) best = {refined, refined_value};
  return best;
}

double bea_alpha(std::int64_t n1, std::int64_t nm, double a_star, double q) {
  const std::int64_t d = n1 - nm;
  if (d == 0) return 0.5;
  const double reported_one = a_star * q;
  const double reported_top = 1.0 - a_star;
  // (aq)^d / ((aq)^d + (1 − a)^d) in the limit when a base vanishes; q > 0
  // means both bases are never zero together.
  assert(!(reported_one <= 0.0 && reported_top <= 0.0));
  if (reported_one <= 0.0) return d > 0 ? 0.0 : 1.0;
  if (reported_top <= 0.0) return d > 0 ? 1.0 : 0.0;
  // α = 1 / (1 + exp(x)), x = d·log((1 − a) / (aq))
  const double x = static_cast<double>(d) *
                   (std::log(reported_top) - std::log(reported_one));
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

double bea(const ObservedHistogram& h, const BeaParams& params,
           RatingScale m) {
  h.validate();
  params.validate();
  require(h.size() == m.size(), "histogram does not match the rating scale");
  return balanced_from_counts(h.counts, h.unobserved, params);
}

namespace detail {

PaaBounds paa_bounds_weights(std::span<const double> w, double q) {
  const int m = static_cast<int>(w.size());
  PaaBounds bounds;
  for (int k = 1; k <= m; ++k) {
    double c1 = 0.0;
    double c2 = 0.0;
    for (int i = 1; i <= m; ++i) {
      const double term = static_cast<double>(i - k) * w[i - 1];
      if (i < k) {
        c1 += term / q;
        c2 += term;
      } else if (i > k) {
        c1 += term;
        c2 += term / q;
      }
    }
    if (c1 >= 0.0) bounds.k1 = k;
    if (c2 >= 0.0) bounds.k2 = k;
  }

  double num = 0.0;
  double den = 0.0;
  for (int r = 1; r <= m; ++r) {
    const double scale = r <= bounds.k1 ? 1.0 : q;
    num += scale * r * w[r - 1];
    den += scale * w[r - 1];
  }
  bounds.lower = num / den;

  num = 0.0;
  den = 0.0;
  for (int r = 1; r <= m; ++r) {
    const double scale = r <= bounds.k2 ? q : 1.0;
    num += scale * r * w[r - 1];
    den += scale * w[r - 1];
  }
  bounds.upper = num / den;
  return bounds;
}

double aggregate_counts(const AggregatorSpec& spec,
                        std::span<const std::int64_t> counts,
                        std::int64_t unobserved) {
  const RatingScale scale(static_cast<int>(counts.size()));
  if (spec.kind == AggregatorKind::kBalancedExtremes) {
    require(spec.bea.has_value(), "BEA spec without parameters");
    return balanced_from_counts(counts, unobserved, *spec.bea);
  }
  const std::int64_t n_obs = observed_count(counts);
  if (n_obs == 0) return scale.midpoint();
  const double n = static_cast<double>(n_obs);
  switch (spec.kind) {
    case AggregatorKind::kAverage:
      return observed_sum(counts) / n;
    case AggregatorKind::kSpectral: {
      double sq = 0.0;
      for (std::size_t i = 0; i < counts.size(); ++i) {
        const double r = static_cast<double>(i + 1);
        sq += r * r * static_cast<double>(counts[i]);
      }
      return std::sqrt(sq / n);
    }
    case AggregatorKind::kPolarizingAveraging: {
      std::vector<double> w(counts.begin(), counts.end());
      const PaaBounds b = paa_bounds_weights(w, spec.q);
      return 0.5 * (b.lower + b.upper);
    }
    case AggregatorKind::kBalancedExtremes:
      break;
  }
  return scale.midpoint();
}

}  // namespace detail

int paa_k1(const EmpiricalDistribution& p_hat, double q) {
  check_q(q);
  return detail::paa_bounds_weights(p_hat.probs(), q).k1;
}

int paa_k2(const EmpiricalDistribution& p_hat, double q) {
  check_q(q);
  return detail::paa_bounds_weights(p_hat.probs(), q).k2;
}

PaaBounds paa_bounds(const EmpiricalDistribution& p_hat, double q) {
  check_q(q);
  return detail::paa_bounds_weights(p_hat.probs(), q);
}

double paa(const EmpiricalDistribution& p_hat, double q) {
  const PaaBounds b = paa_bounds(p_hat, q);
  return 0.5 * (b.lower + b.upper);
}

double aggregate(const AggregatorSpec& spec, const ObservedHistogram& h) {
  h.validate();
  return detail::aggregate_counts(spec, h.counts, h.unobserved);
}

double aggregate_empirical(const AggregatorSpec& spec,
                           const EmpiricalDistribution& p_hat) {
  const auto probs = p_hat.probs();
  switch (spec.kind) {
    case AggregatorKind::kAverage:
      return weighted_rating_mean(probs);
    case AggregatorKind::kSpectral: {
      double sq = 0.0;
      for (std::size_t i = 0; i < probs.size(); ++i) {
        const double r = static_cast<double>(i + 1);
        sq += r * r * probs[i];
      }
      return std::sqrt(sq);
    }
    case AggregatorKind::kPolarizingAveraging:
      return paa(p_hat, spec.q);
    case AggregatorKind::kBalancedExtremes:
      break;
  }
  fail(ErrorCode::kInvalidArgument,
       "BEA needs a known sample size; it has no asymptotic form");
}

AStarSolution AStarCache::get(int n, RatingScale m, double q) {
  const auto key = std::make_tuple(n, m.size(), q);
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  // Solved outside the lock; concurrent misses compute the same value.
  const AStarSolution solution = solve_a_star(n, m, q);
  std::lock_guard lock(mutex_);
  return entries_.try_emplace(key, solution).first->second;
}

std::size_t AStarCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

AStarCache& shared_a_star_cache() {
  static AStarCache cache;
  return cache;
}

}  // namespace robust_rating
