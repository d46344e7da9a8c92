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

#include "robust_rating/regret.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "robust_rating/error.hpp"
#include "robust_rating/parallel.hpp"
#include "robust_rating/sampling.hpp"

namespace robust_rating {
namespace {

constexpr std::int64_t kTrialBlock = 1024;

// Visits every observed histogram with positive probability together with
// its multinomial probability. Buckets 0..m-1 are ratings, bucket m is
// "unobserved".
class OutcomeEnumerator {
 public:
  OutcomeEnumerator(const InformationStructure& theta, int n)
      : n_(n), m_(theta.size()), buckets_(observed_marginal(theta)) {
    for (int b = 0; b <= m_; ++b) {
      if (buckets_[b] > 0.0) {
        support_.push_back(b);
        log_prob_.push_back(std::log(buckets_[b]));
      }
    }
    log_fact_.resize(n_ + 1, 0.0);
    for (int i = 1; i <= n_; ++i) log_fact_[i] = log_fact_[i - 1] + std::log(i);
  }

  double size() const {
    const int k = static_cast<int>(support_.size());
    // C(n + k − 1, k − 1)
    double out = 1.0;
    for (int i = 1; i < k; ++i) out = out * (n_ + i) / i;
    return std::round(out);
  }

  template <class Fn>
  void run(const EnumerationOptions& opts, Fn&& fn) {
    if (size() > static_cast<double>(opts.cap)) {
      fail(ErrorCode::kEnumerationTooLarge,
           "exact enumeration would visit " +
               std::to_string(static_cast<long long>(size())) +
               " outcomes; cap is " + std::to_string(opts.cap));
    }
    counts_.assign(m_, 0);
    unobserved_ = 0;
    recurse(0, n_, log_fact_[n_], fn);
  }

 private:
  void set_bucket(int bucket, std::int64_t value) {
    if (bucket == m_) {
      unobserved_ = value;
    } else {
      counts_[bucket] = value;
    }
  }

  template <class Fn>
  void recurse(std::size_t idx, int remaining, double log_w, Fn& fn) {
    const int bucket = support_[idx];
    if (idx + 1 == support_.size()) {
      set_bucket(bucket, remaining);
      const double lw =
          log_w + remaining * log_prob_[idx] - log_fact_[remaining];
      fn(std::span<const std::int64_t>(counts_), unobserved_, std::exp(lw));
      set_bucket(bucket, 0);
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      set_bucket(bucket, c);
      recurse(idx + 1, remaining - c,
              log_w + c * log_prob_[idx] - log_fact_[c], fn);
    }
    set_bucket(bucket, 0);
  }

  int n_;
  int m_;
  std::vector<double> buckets_;
  std::vector<int> support_;
  std::vector<double> log_prob_;
  std::vector<double> log_fact_;
  std::vector<std::int64_t> counts_;
  std::int64_t unobserved_ = 0;
};

InformationStructure make_structure(std::vector<double> p, std::vector<double> g,
                                    double q) {
  return {CategoricalDistribution(std::move(p)),
          ParticipationProfile(std::move(g), q)};
}

double observed_sum(std::span<const std::int64_t> counts) {
  double s = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    s += static_cast<double>(i + 1) * static_cast<double>(counts[i]);
  }
  return s;
}

}  // namespace

SampleSize SampleSize::finite(int n) {
  require(n >= 1, "sample size n must be at least 1");
  SampleSize out;
  out.n_ = n;
  return out;
}

int SampleSize::value() const {
  require(!is_asymptotic(), "asymptotic sample size has no finite value");
  return n_;
}

std::string SampleSize::to_string() const {
  return is_asymptotic() ? std::string("asymptotic") : std::to_string(n_);
}

void RegretQuery::validate() const {
  const double q = structure.g().q();
  switch (aggregator.kind) {
    case AggregatorKind::kBalancedExtremes: {
      require(aggregator.bea.has_value(), "bea requires parameters");
      aggregator.bea->validate();
      require(!n.is_asymptotic(), "bea requires a finite sample size");
      if (aggregator.bea->n != n.value()) {
        fail(ErrorCode::kInconsistentCounts,
             "bea was configured for n=" + std::to_string(aggregator.bea->n) +
                 " but the query has n=" + n.to_string());
      }
      require(aggregator.bea->q == q,
              "bea q differs from the participation lower bound");
      break;
    }
    case AggregatorKind::kPolarizingAveraging:
      require(aggregator.q == q,
              "paa q differs from the participation lower bound");
      break;
    default:
      break;
  }
}

double ideal_term(const CategoricalDistribution& p, int n) {
  require(n >= 1, "sample size n must be at least 1");
  return dist_variance(p) / n;
}

double enumeration_size(const InformationStructure& theta, int n) {
  require(n >= 1, "sample size n must be at least 1");
  return OutcomeEnumerator(theta, n).size();
}

double exact_loss(const RegretQuery& query, const EnumerationOptions& opts) {
  query.validate();
  const int n = query.n.value();
  const double mu = dist_mean(query.structure.p());
  double loss = 0.0;
  OutcomeEnumerator(query.structure, n)
      .run(opts, [&](std::span<const std::int64_t> counts,
                     std::int64_t unobserved, double w) {
        const double f =
            detail::aggregate_counts(query.aggregator, counts, unobserved);
        loss += w * (f - mu) * (f - mu);
      });
  return loss;
}

double exact_regret(const RegretQuery& query, const EnumerationOptions& opts) {
  return exact_loss(query, opts) - ideal_term(query.structure.p(), query.n.value());
}

double exact_full_mean_gap(const RegretQuery& query,
                           const EnumerationOptions& opts) {
  query.validate();
  const int n = query.n.value();
  const auto p = query.structure.p().probs();
  const auto g = query.structure.g().probs();
  // Law of one hidden rating.
  double hidden_mass = 0.0, hidden_mean = 0.0, hidden_second = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double w = p[i] * (1.0 - g[i]);
    const double r = static_cast<double>(i + 1);
    hidden_mass += w;
    hidden_mean += w * r;
    hidden_second += w * r * r;
  }
  double hidden_var = 0.0;
  if (hidden_mass > 0.0) {
    hidden_mean /= hidden_mass;
    hidden_var = std::max(0.0, hidden_second / hidden_mass -
                                   hidden_mean * hidden_mean);
  }
  const double nn = static_cast<double>(n);
  double gap = 0.0;
  OutcomeEnumerator(query.structure, n)
      .run(opts, [&](std::span<const std::int64_t> counts,
                     std::int64_t unobserved, double w) {
        const double f =
            detail::aggregate_counts(query.aggregator, counts, unobserved);
        const double u = static_cast<double>(unobserved);
        const double centre = (observed_sum(counts) + u * hidden_mean) / nn;
        gap += w * ((f - centre) * (f - centre) + u * hidden_var / (nn * nn));
      });
  return gap;
}

McEstimate mc_regret(const RegretQuery& query, std::int64_t trials,
                     std::uint64_t seed) {
  query.validate();
  require(trials >= 1, "Monte Carlo needs at least 1 trial");
  const int n = query.n.value();
  const double mu = dist_mean(query.structure.p());
  const std::int64_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<double> sums(blocks, 0.0), squares(blocks, 0.0);
  parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t b) {
    const std::int64_t begin = static_cast<std::int64_t>(b) * kTrialBlock;
    const std::int64_t end = std::min(trials, begin + kTrialBlock);
    double s = 0.0, s2 = 0.0;
    for (std::int64_t t = begin; t < end; ++t) {
      const SimulatedSample sample = simulate(
          query.structure, n, RngSpec{seed, static_cast<std::uint64_t>(t)});
      const double f = detail::aggregate_counts(
          query.aggregator, sample.observed.counts, sample.observed.unobserved);
      const double xbar = sample.full.mean();
      const double v = (f - mu) * (f - mu) - (xbar - mu) * (xbar - mu);
      s += v;
      s2 += v * v;
    }
    sums[b] = s;
    squares[b] = s2;
  });
  double s = 0.0, s2 = 0.0;
  for (std::int64_t b = 0; b < blocks; ++b) {
    s += sums[b];
    s2 += squares[b];
  }
  const double t = static_cast<double>(trials);
  const double mean = s / t;
  const double var =
      trials > 1 ? std::max(0.0, (s2 - t * mean * mean) / (t - 1.0)) : 0.0;
  return {mean, std::sqrt(var / t), trials};
}

LowerBound lower_bound(int n, RatingScale m, double q) {
  const AStarSolution sol = shared_a_star_cache().get(n, m, q);
  return {sol.value, sol.a_star};
}

double asymptotic_paa_regret(RatingScale m, double q) {
  require(q > 0.0 && q <= 1.0, "q must lie in (0, 1]");
  const double v = (m.size() - 1) * (1.0 - q) / (2.0 * (1.0 + q));
  return v * v;
}

std::pair<InformationStructure, InformationStructure> prop_worst_structures(
    RatingScale m, double q) {
  const int k = m.size();
  std::vector<double> p1(k, 0.0), g1(k, 1.0);
  p1.front() = 1.0 / (1.0 + q);
  p1.back() = q / (1.0 + q);
  g1.front() = q;
  std::vector<double> p2(p1.rbegin(), p1.rend()), g2(g1.rbegin(), g1.rend());
  return {make_structure(std::move(p1), std::move(g1), q),
          make_structure(std::move(p2), std::move(g2), q)};
}

std::pair<InformationStructure, InformationStructure> two_point_structures(
    RatingScale m, double q, double a) {
  require(a >= 0.0 && a <= 1.0, "a must lie in [0, 1]");
  const int k = m.size();
  std::vector<double> p1(k, 0.0), g1(k, 1.0);
  p1.front() = a;
  p1.back() = 1.0 - a;
  g1.front() = q;
  std::vector<double> p2(p1.rbegin(), p1.rend()), g2(g1.rbegin(), g1.rend());
  return {make_structure(std::move(p1), std::move(g1), q),
          make_structure(std::move(p2), std::move(g2), q)};
}

InformationStructure uniform_g_structure(RatingScale m, double q, double b) {
  require(b >= 0.0 && b <= 1.0, "b must lie in [0, 1]");
  const int k = m.size();
  std::vector<double> p(k, 0.0);
  p.front() = b;
  p.back() = 1.0 - b;
  return make_structure(std::move(p), std::vector<double>(k, q), q);
}

double asymptotic_loss(const AggregatorSpec& aggregator,
                       const InformationStructure& theta) {
  if (aggregator.kind == AggregatorKind::kPolarizingAveraging) {
    require(aggregator.q == theta.g().q(),
            "paa q differs from the participation lower bound");
  }
  std::vector<double> marginal = observed_marginal(theta);
  marginal.pop_back();
  double mass = 0.0;
  for (double v : marginal) mass += v;
  if (mass <= 0.0) {
    fail(ErrorCode::kNoReports, "structure never produces a report");
  }
  for (double& v : marginal) v /= mass;
  const double f = aggregate_empirical(aggregator,
                                       EmpiricalDistribution(std::move(marginal)));
  const double mu = dist_mean(theta.p());
  return (f - mu) * (f - mu);
}

double evaluate_regret(const RegretQuery& query, const EvaluationMode& mode) {
  if (query.n.is_asymptotic()) {
    query.validate();
    return asymptotic_loss(query.aggregator, query.structure);
  }
  if (mode.monte_carlo) {
    return mc_regret(query, mode.monte_carlo->trials, mode.monte_carlo->seed)
        .estimate;
  }
  return exact_regret(query, mode.enumeration);
}

}  // namespace robust_rating
