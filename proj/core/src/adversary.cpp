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

#include "robust_rating/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "robust_rating/error.hpp"
#include "robust_rating/parallel.hpp"

namespace robust_rating {
namespace {

int steps_in_unit(double step) {
  return static_cast<int>(std::lround(1.0 / step));
}

// The step grid on [0, 1] plus 1/(1+q) and q/(1+q), where the unknown-n
// worst case sits.
std::vector<double> parameter_values(double step, double q) {
  std::vector<double> out;
  const int k = steps_in_unit(step);
  for (int i = 0; i <= k; ++i) out.push_back(std::min(1.0, i * step));
  for (double extra : {1.0 / (1.0 + q), q / (1.0 + q)}) {
    const auto at = std::lower_bound(out.begin(), out.end(), extra);
    if (at == out.end() || *at != extra) out.insert(at, extra);
  }
  return out;
}

std::vector<double> box_values(double q, double step) {
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const double v = q + k * step;
    if (v >= 1.0 - 1e-12) break;
    out.push_back(v);
  }
  out.push_back(1.0);
  return out;
}

void simplex_points(int parts, int total, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) + 1 == parts) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int c = 0; c <= total; ++c) {
    cur.push_back(c);
    simplex_points(parts, total - c, cur, out);
    cur.pop_back();
  }
}

std::string format_count(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.0f", v);
  return buf;
}

}  // namespace

std::string_view family_name(SearchFamily family) {
  switch (family) {
    case SearchFamily::kTwoPointMonotone:
      return "two-point";
    case SearchFamily::kTwoPointUniformG:
      return "uniform-g";
    case SearchFamily::kGeneralGrid:
      return "general";
  }
  return "unknown";
}

SearchFamily parse_family(std::string_view name) {
  if (name == "two-point") return SearchFamily::kTwoPointMonotone;
  if (name == "uniform-g") return SearchFamily::kTwoPointUniformG;
  if (name == "general") return SearchFamily::kGeneralGrid;
  fail(ErrorCode::kInvalidArgument,
       "unknown search family '" + std::string(name) + "'");
}

std::vector<SearchFamily> default_families() {
  return {SearchFamily::kTwoPointMonotone, SearchFamily::kTwoPointUniformG};
}

void SearchGrid::validate() const {
  for (double step : {parameter_step, simplex_step, box_step}) {
    require(step > 0.0 && step <= 1.0, "grid steps must lie in (0, 1]");
  }
  require(std::abs(steps_in_unit(simplex_step) * simplex_step - 1.0) < 1e-9,
          "simplex step must divide 1");
}

std::vector<Candidate> family_candidates(SearchFamily family, RatingScale m,
                                         double q, const SearchGrid& grid) {
  grid.validate();
  std::vector<Candidate> out;
  switch (family) {
    case SearchFamily::kTwoPointMonotone: {
      for (double a : parameter_values(grid.parameter_step, q)) {
        auto [t1, t2] = two_point_structures(m, q, a);
        out.push_back({std::move(t1), a});
        out.push_back({std::move(t2), a});
      }
      break;
    }
    case SearchFamily::kTwoPointUniformG: {
      for (double b : parameter_values(grid.parameter_step, q)) {
        out.push_back({uniform_g_structure(m, q, b), b});
      }
      break;
    }
    case SearchFamily::kGeneralGrid: {
      require(m.size() <= 3, "the general grid supports m <= 3 only");
      const int total = steps_in_unit(grid.simplex_step);
      std::vector<std::vector<int>> ps;
      std::vector<int> cur;
      simplex_points(m.size(), total, cur, ps);
      const std::vector<double> box = box_values(q, grid.box_step);
      const int dims = m.size();
      std::size_t combos = 1;
      for (int d = 0; d < dims; ++d) combos *= box.size();
      for (const auto& comp : ps) {
        std::vector<double> p(dims);
        for (int d = 0; d < dims; ++d) {
          p[d] = static_cast<double>(comp[d]) / total;
        }
        for (std::size_t c = 0; c < combos; ++c) {
          std::vector<double> g(dims);
          std::size_t rest = c;
          for (int d = 0; d < dims; ++d) {
            g[d] = box[rest % box.size()];
            rest /= box.size();
          }
          out.push_back({InformationStructure(CategoricalDistribution(p),
                                              ParticipationProfile(g, q)),
                         std::nullopt});
        }
      }
      break;
    }
  }
  return out;
}

WorstCaseRecord adversary_search(const AggregatorSpec& aggregator,
                                 SampleSize n, RatingScale m, double q,
                                 SearchFamily family, const SearchGrid& grid,
                                 const EvaluationMode& mode) {
  const std::vector<Candidate> cells = family_candidates(family, m, q, grid);
  if (!n.is_asymptotic() && !mode.monte_carlo) {
    // Refuse up front rather than part way through the sweep.
    double largest = 0.0;
    for (const Candidate& c : cells) {
      largest = std::max(largest, enumeration_size(c.structure, n.value()));
    }
    if (largest > static_cast<double>(mode.enumeration.cap)) {
      fail(ErrorCode::kEnumerationTooLarge,
           "exact enumeration would visit up to " + format_count(largest) +
               " outcomes per structure; cap is " +
               std::to_string(mode.enumeration.cap));
    }
  }
  std::vector<double> values(cells.size(), 0.0);
  parallel_for(cells.size(), [&](std::size_t i) {
    values[i] = evaluate_regret(RegretQuery{aggregator, cells[i].structure, n},
                                mode);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return WorstCaseRecord{aggregator,          q,
                         n,                   family,
                         cells[best].structure, values[best],
                         grid,                cells[best].parameter};
}

WorstCaseRecord worst_case(const AggregatorSpec& aggregator, SampleSize n,
                           RatingScale m, double q,
                           std::span<const SearchFamily> families,
                           const SearchGrid& grid, const EvaluationMode& mode) {
  require(!families.empty(), "at least one search family is required");
  std::optional<WorstCaseRecord> best;
  for (SearchFamily family : families) {
    WorstCaseRecord rec =
        adversary_search(aggregator, n, m, q, family, grid, mode);
    if (!best || rec.regret > best->regret) best = std::move(rec);
  }
  return std::move(*best);
}

}  // namespace robust_rating
