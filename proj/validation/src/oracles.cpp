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

#include "robust_rating/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace robust_rating::oracle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// x^k with negative k allowed; 0^negative is +inf.
double signed_pow(double x, int k) {
  if (k < 0 && x == 0.0) return kInf;
  return std::pow(x, k);
}

double naive_alpha(int d, double a, double q) {
  if (d == 0) return 0.5;
  const double A = signed_pow(a * q, d);
  const double B = signed_pow(1.0 - a, d);
  if (std::isinf(A)) return 1.0;
  if (std::isinf(B)) return 0.0;
  return A / (A + B);
}

std::vector<double> box(double q, double step) {
  std::vector<double> out;
  for (int k = 0; q + k * step < 1.0 - 1e-12; ++k) out.push_back(q + k * step);
  out.push_back(1.0);
  return out;
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  std::vector<double> row(n + 1, 0.0);
  row[0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j > 0; --j) row[j] += row[j - 1];
  }
  return row[k];
}

double bea_objective(double a, int n, int m, double q) {
  double total = 0.0;
  for (int s = 0; s <= n; ++s) {
    for (int t = 0; s + t <= n; ++t) {
      const int hidden = n - s - t;
      if (hidden == 0) continue;
      const double w = binomial(n, t) * binomial(n - t, s) *
                       std::pow(a, n - t) * std::pow(1.0 - a, t) *
                       std::pow(q, s) * std::pow(1.0 - q, hidden);
      const double miss =
          hidden * (m - 1) * (1.0 - naive_alpha(s - t, a, q)) / n;
      total += w * miss * miss;
    }
  }
  return total;
}

GridMax dense_a_star(int n, int m, double q, int steps) {
  GridMax best{0.0, -kInf};
  for (int i = 0; i <= steps; ++i) {
    const double a = static_cast<double>(i) / steps;
    const double v = bea_objective(a, n, m, q);
    if (v >= best.value) best = {a, v};
  }
  return best;
}

double rater_level_loss(const AggregatorSpec& spec,
                        const InformationStructure& theta, int n) {
  const int m = theta.size();
  const auto p = theta.p().probs();
  const auto g = theta.g().probs();
  const double mu = dist_mean(theta.p());
  // Outcome m means "not observed".
  std::vector<double> prob(m + 1, 0.0);
  for (int r = 0; r < m; ++r) {
    prob[r] = p[r] * g[r];
    prob[m] += p[r] * (1.0 - g[r]);
  }
  std::vector<int> seq(n, 0);
  double loss = 0.0;
  while (true) {
    double w = 1.0;
    ObservedHistogram h;
    h.counts.assign(m, 0);
    for (int i = 0; i < n; ++i) {
      w *= prob[seq[i]];
      if (seq[i] == m) {
        ++h.unobserved;
      } else {
        ++h.counts[seq[i]];
      }
    }
    if (w > 0.0) {
      const double f = aggregate(spec, h);
      loss += w * (f - mu) * (f - mu);
    }
    int i = 0;
    while (i < n && ++seq[i] > m) seq[i++] = 0;
    if (i == n) break;
  }
  return loss;
}

double rater_level_full_mean_gap(const AggregatorSpec& spec,
                                 const InformationStructure& theta, int n) {
  const int m = theta.size();
  const auto p = theta.p().probs();
  const auto g = theta.g().probs();
  // Outcome 2r is "rated r + 1, observed"; 2r + 1 is "rated r + 1, hidden".
  std::vector<int> seq(n, 0);
  double gap = 0.0;
  while (true) {
    double w = 1.0;
    double sum = 0.0;
    ObservedHistogram h;
    h.counts.assign(m, 0);
    for (int i = 0; i < n; ++i) {
      const int r = seq[i] / 2;
      const bool seen = seq[i] % 2 == 0;
      w *= p[r] * (seen ? g[r] : 1.0 - g[r]);
      sum += r + 1;
      if (seen) {
        ++h.counts[r];
      } else {
        ++h.unobserved;
      }
    }
    if (w > 0.0) {
      const double f = aggregate(spec, h);
      const double xbar = sum / n;
      gap += w * (f - xbar) * (f - xbar);
    }
    int i = 0;
    while (i < n && ++seq[i] >= 2 * m) seq[i++] = 0;
    if (i == n) break;
  }
  return gap;
}

double implied_mean(std::span<const double> p_hat, std::span<const double> g) {
  double num = 0.0, den = 0.0;
  for (std::size_t r = 0; r < p_hat.size(); ++r) {
    num += (r + 1.0) * p_hat[r] / g[r];
    den += p_hat[r] / g[r];
  }
  return num / den;
}

MeanRange extreme_monotone_range(std::span<const double> p_hat, double q) {
  const std::size_t m = p_hat.size();
  MeanRange out{kInf, -kInf};
  for (std::size_t k = 0; k <= m; ++k) {
    std::vector<double> low_first(m), high_first(m);
    for (std::size_t r = 0; r < m; ++r) {
      low_first[r] = r < k ? q : 1.0;
      high_first[r] = r < k ? 1.0 : q;
    }
    for (const auto& g : {low_first, high_first}) {
      const double v = implied_mean(p_hat, g);
      out.lower = std::min(out.lower, v);
      out.upper = std::max(out.upper, v);
    }
  }
  return out;
}

MeanRange box_grid_range(std::span<const double> p_hat, double q, double step) {
  const std::vector<double> values = box(q, step);
  const std::size_t m = p_hat.size();
  std::vector<std::size_t> idx(m, 0);
  std::vector<double> g(m);
  MeanRange out{kInf, -kInf};
  while (true) {
    for (std::size_t r = 0; r < m; ++r) g[r] = values[idx[r]];
    const double v = implied_mean(p_hat, g);
    out.lower = std::min(out.lower, v);
    out.upper = std::max(out.upper, v);
    std::size_t i = 0;
    while (i < m && ++idx[i] == values.size()) idx[i++] = 0;
    if (i == m) break;
  }
  return out;
}

}  // namespace robust_rating::oracle
