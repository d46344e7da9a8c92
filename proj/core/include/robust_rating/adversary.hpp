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

// Grid search for the information structure that maximizes an aggregator's
// regret.
//
//   two-point   p = [a, 0, …, 0, 1 − a], g = [q, 1, …, 1] and its mirror
//   uniform-g   p = [b, 0, …, 0, 1 − b], g = q everywhere
//   general     every p on a simplex grid and every g on a box grid, m <= 3
//
// The a and b sweeps use the parameter step plus the points 1/(1+q) and
// q/(1+q).

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "robust_rating/aggregators.hpp"
#include "robust_rating/model.hpp"
#include "robust_rating/regret.hpp"

namespace robust_rating {

enum class SearchFamily {
  kTwoPointMonotone,
  kTwoPointUniformG,
  kGeneralGrid,
};

/// two-point, uniform-g, general.
std::string_view family_name(SearchFamily family);
SearchFamily parse_family(std::string_view name);

/// The default union used for worst-case curves.
std::vector<SearchFamily> default_families();

struct SearchGrid {
  double parameter_step = 1e-3;
  double simplex_step = 0.1;
  double box_step = 0.1;

  void validate() const;
  friend bool operator==(const SearchGrid&, const SearchGrid&) = default;
};

struct WorstCaseRecord {
  AggregatorSpec aggregator;
  double q = 1.0;
  SampleSize n = SampleSize::asymptotic();
  SearchFamily family = SearchFamily::kTwoPointMonotone;
  InformationStructure worst_structure;
  double regret = 0.0;
  SearchGrid grid;
  /// a or b at the maximum; empty for the general grid.
  std::optional<double> parameter;
};

/// Every candidate structure of one family, in sweep order.
struct Candidate {
  InformationStructure structure;
  std::optional<double> parameter;
};
std::vector<Candidate> family_candidates(SearchFamily family, RatingScale m,
                                         double q, const SearchGrid& grid);

/// Evaluates every candidate and returns the first maximum in sweep order.
/// Throws kEnumerationTooLarge from exact evaluation.
WorstCaseRecord adversary_search(const AggregatorSpec& aggregator,
                                 SampleSize n, RatingScale m, double q,
                                 SearchFamily family,
                                 const SearchGrid& grid = {},
                                 const EvaluationMode& mode = {});

/// Maximum over several families; earlier families win ties.
WorstCaseRecord worst_case(const AggregatorSpec& aggregator, SampleSize n,
                           RatingScale m, double q,
                           std::span<const SearchFamily> families,
                           const SearchGrid& grid = {},
                           const EvaluationMode& mode = {});

}  // namespace robust_rating
