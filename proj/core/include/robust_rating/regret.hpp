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

// Loss and regret of an aggregator f against an information structure θ:
//
//   L(f, θ) = E[(f(X̂) − μ)²]
//   R(f, θ) = L(f, θ) − Var(p) / n
//
// where Var(p) / n is the expected squared error of the full-sample mean.
// Exact values enumerate every observed histogram of the (m + 1)-bucket
// multinomial; Monte Carlo values sample them. As n → ∞ the regret becomes
// the loss at p̂ ∝ p∘g.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "robust_rating/aggregators.hpp"
#include "robust_rating/model.hpp"

namespace robust_rating {

/// A finite sample size n >= 1, or the asymptotic limit n → ∞.
class SampleSize {
 public:
  static SampleSize finite(int n);
  static SampleSize asymptotic() { return SampleSize(); }

  bool is_asymptotic() const noexcept { return n_ == 0; }
  /// Throws kInvalidArgument for the asymptotic size.
  int value() const;
  /// "asymptotic" or the decimal value.
  std::string to_string() const;

  friend bool operator==(SampleSize, SampleSize) = default;

 private:
  SampleSize() = default;
  int n_ = 0;
};

struct RegretQuery {
  AggregatorSpec aggregator;
  InformationStructure structure;
  SampleSize n;

  /// BEA needs a finite n equal to its configured n; the aggregator's q must
  /// match the profile's q for bea and paa.
  void validate() const;
};

struct EnumerationOptions {
  std::uint64_t cap = 10'000'000;
};

struct MonteCarloSettings {
  std::int64_t trials = 100'000;
  std::uint64_t seed = 0;
};

/// How evaluate_regret computes finite-n values: exact enumeration unless
/// Monte Carlo settings are given.
struct EvaluationMode {
  std::optional<MonteCarloSettings> monte_carlo;
  EnumerationOptions enumeration;
};

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
};

struct LowerBound {
  double value = 0.0;
  double a_star = 1.0;
};

/// Var(p) / n.
double ideal_term(const CategoricalDistribution& p, int n);

/// Number of outcomes exact enumeration visits for θ at sample size n.
double enumeration_size(const InformationStructure& theta, int n);

/// E[(f − μ)²] by exact enumeration. Throws kEnumerationTooLarge past the cap.
double exact_loss(const RegretQuery& query, const EnumerationOptions& opts = {});
/// exact_loss − ideal_term. Not clamped; benign structures can go negative.
double exact_regret(const RegretQuery& query,
                    const EnumerationOptions& opts = {});
/// E[(f − x̄)²], the mean squared gap to the realized full-sample average x̄.
/// Conditional on the observed histogram, the n_u hidden ratings are i.i.d.
/// with law ∝ p_r(1 − g_r), which gives the value in closed form per outcome.
double exact_full_mean_gap(const RegretQuery& query,
                           const EnumerationOptions& opts = {});

/// Sample mean and standard error of (f − μ)² − (x̄ − μ)² over `trials`
/// simulated samples; trial t uses RngSpec{seed, t}. Trials are summed in
/// fixed blocks reduced in order, so the result does not depend on the
/// number of worker threads.
McEstimate mc_regret(const RegretQuery& query, std::int64_t trials,
                     std::uint64_t seed);

/// max_a J(a): no aggregator has worst-case regret below this.
LowerBound lower_bound(int n, RatingScale m, double q);

/// ((m − 1)(1 − q) / (2(1 + q)))², the worst-case asymptotic regret of PAA.
double asymptotic_paa_regret(RatingScale m, double q);

/// PAA's worst asymptotic pair: p = [1/(q+1), 0, …, 0, q/(q+1)] with
/// g = [q, 1, …, 1], and its mirror image.
std::pair<InformationStructure, InformationStructure> prop_worst_structures(
    RatingScale m, double q);

/// The two-point pair parameterized by a: p = [a, 0, …, 0, 1 − a] with
/// g = [q, 1, …, 1], and p = [1 − a, 0, …, 0, a] with g = [1, …, 1, q].
std::pair<InformationStructure, InformationStructure> two_point_structures(
    RatingScale m, double q, double a);

/// p = [b, 0, …, 0, 1 − b] with g = q everywhere.
InformationStructure uniform_g_structure(RatingScale m, double q, double b);

/// (f(p̂) − μ)² with p̂ ∝ p∘g; avg, spe and paa only.
double asymptotic_loss(const AggregatorSpec& aggregator,
                       const InformationStructure& theta);

/// Regret in the query's mode: asymptotic_loss for n → ∞, otherwise
/// exact_regret or the Monte Carlo estimate.
double evaluate_regret(const RegretQuery& query, const EvaluationMode& mode);

}  // namespace robust_rating
