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

// Slow, direct reference computations used only by tests. None of these
// share code paths with the library's fast implementations.

#pragma once

#include <span>
#include <vector>

#include "robust_rating/aggregators.hpp"
#include "robust_rating/model.hpp"

namespace robust_rating::oracle {

/// Binomial coefficient from Pascal's triangle, in double.
double binomial(int n, int k);

/// J(a) summed term by term with std::pow.
double bea_objective(double a, int n, int m, double q);

struct GridMax {
  double a = 0.0;
  double value = 0.0;
};
/// Best of J over {i / steps}; ties go to the largest a.
GridMax dense_a_star(int n, int m, double q, int steps = 10000);

/// E[(f − μ)²] by enumerating every per-rater outcome, (m + 1)^n of them.
double rater_level_loss(const AggregatorSpec& spec,
                        const InformationStructure& theta, int n);
/// E[(f − x̄)²] by enumerating every (rating, observed) sequence, (2m)^n.
double rater_level_full_mean_gap(const AggregatorSpec& spec,
                                 const InformationStructure& theta, int n);

/// Σ r p̂_r / g_r over Σ p̂_r / g_r: the true mean implied by p̂ and g.
double implied_mean(std::span<const double> p_hat, std::span<const double> g);

struct MeanRange {
  double lower = 0.0;
  double upper = 0.0;
};
/// Extremes of implied_mean over g = (q, …, q, 1, …, 1) and
/// g = (1, …, 1, q, …, q) at every split point.
MeanRange extreme_monotone_range(std::span<const double> p_hat, double q);
/// Extremes of implied_mean over g on the box grid {q, q + step, …, 1}^m.
MeanRange box_grid_range(std::span<const double> p_hat, double q, double step);

}  // namespace robust_rating::oracle
