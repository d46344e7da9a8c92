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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>

#include "robust_rating/adversary.hpp"
#include "robust_rating/aggregators.hpp"
#include "robust_rating/data_io.hpp"
#include "robust_rating/error.hpp"
#include "robust_rating/oracles.hpp"
#include "robust_rating/regret.hpp"
#include "robust_rating/sampling.hpp"
#include "robust_rating/validation.hpp"

namespace robust_rating {
namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string printf_string(const char* fmt, ...) {
  char buf[1024];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

void append(std::string& detail, const std::string& more) {
  if (!detail.empty()) detail += "; ";
  detail += more;
}

InformationStructure random_structure(std::mt19937_64& rng, int m, double q) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> p(m), g(m);
  double total = 0.0;
  for (double& v : p) total += (v = unit(rng) + 1e-3);
  for (double& v : p) v /= total;
  for (double& v : g) v = q + (1.0 - q) * unit(rng);
  return {CategoricalDistribution(p), ParticipationProfile(g, q)};
}

// -- 1 ----------------------------------------------------------------------

Outcome closed_form_worst_pair() {
  Outcome out{true, {}};
  double worst_err = 0.0;
  for (int m : {2, 3, 5}) {
    for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double half_gap = (m - 1) * (1.0 - q) / (2.0 * (1.0 + q));
      const double expected = half_gap * half_gap;
      auto [t1, t2] = prop_worst_structures(RatingScale(m), q);
      const auto paa = AggregatorSpec::polarizing(q);
      for (const auto& theta : {t1, t2}) {
        const double err = std::abs(asymptotic_loss(paa, theta) - expected);
        worst_err = std::max(worst_err, err);
        if (err > 1e-9) {
          out.passed = false;
          append(out.detail, printf_string("m=%d q=%.1f off by %.3g", m, q, err));
        }
      }
    }
  }
  append(out.detail, printf_string("30 values, max error %.3g", worst_err));
  return out;
}

// -- 2 ----------------------------------------------------------------------

Outcome worst_empirical_distribution() {
  const double q = 0.5;
  const auto rec = adversary_search(AggregatorSpec::polarizing(q),
                                    SampleSize::asymptotic(), RatingScale(3), q,
                                    SearchFamily::kTwoPointMonotone);
  const double a = rec.parameter.value_or(-1.0);
  const auto hat = observed_marginal(rec.worst_structure);
  const double reported = 1.0 - hat.back();
  const double regret_err = std::abs(rec.regret - 1.0 / 9.0);
  const double a_err = std::abs(a - 1.0 / (1.0 + q));
  const bool even =
      std::abs(hat.front() / reported - 0.5) < 1e-3 &&
      std::abs(hat[2] / reported - 0.5) < 1e-3;
  return {regret_err <= 1e-6 && a_err <= 1e-3 && even,
          printf_string("regret=%.12f (1/9 off by %.3g), a=%.3f, p_hat=(%.4f,%.4f,%.4f)",
                        rec.regret, regret_err, a, hat[0] / reported,
                        hat[1] / reported, hat[2] / reported)};
}

// -- 3 ----------------------------------------------------------------------

Outcome best_response_identity() {
  Outcome out{true, {}};
  for (double q : {0.5, 0.3}) {
    const int n = 10;
    const RatingScale m(3);
    const LowerBound lb = lower_bound(n, m, q);
    const auto bea = AggregatorSpec::balanced(BeaParams{n, q, lb.a_star});
    auto [t1, t2] = two_point_structures(m, q, lb.a_star);
    const auto size = SampleSize::finite(n);
    const double r1 = exact_regret({bea, t1, size});
    const double r2 = exact_regret({bea, t2, size});
    const double gap = exact_full_mean_gap({bea, t1, size});
    const bool ok = std::abs(r1 - r2) <= 1e-6 && std::abs(r1 - lb.value) <= 1e-6 &&
                    std::abs(r2 - lb.value) <= 1e-6;
    out.passed = out.passed && ok;
    append(out.detail,
           printf_string("q=%.1f a*=%.6f R1=%.9f R2=%.9f J=%.9f |R-J|=%.3g "
                         "E[(f-xbar)^2]=%.9f",
                         q, lb.a_star, r1, r2, lb.value, std::abs(r1 - lb.value),
                         gap));
  }
  return out;
}

// -- 4, 5, 6 ----------------------------------------------------------------

double worst_regret(const AggregatorSpec& spec, int n, int m, double q) {
  const auto families = default_families();
  return worst_case(spec, SampleSize::finite(n), RatingScale(m), q, families)
      .regret;
}

Outcome known_n_tracks_bound() {
  Outcome out{true, {}};
  const int n = 20, m = 3;
  for (double q : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    const double bea = worst_regret(AggregatorSpec::balanced(n, RatingScale(m), q), n, m, q);
    const double avg = worst_regret(AggregatorSpec::average(), n, m, q);
    const double lb = lower_bound(n, RatingScale(m), q).value;
    const bool ok = bea < avg && bea <= 1.5 * lb;
    out.passed = out.passed && ok;
    append(out.detail, printf_string("q=%.1f bea=%.5f avg=%.5f lb=%.5f ratio=%.4f%s",
                                     q, bea, avg, lb, bea / lb, ok ? "" : " FAIL"));
  }
  return out;
}

Outcome known_n_crossover() {
  const int n = 10, m = 3;
  std::optional<double> first;
  double closest_q = 0.0, closest_gap = 1e300;
  for (int i = 1; i <= 99; ++i) {
    const double q = i / 100.0;
    const double bea = worst_regret(AggregatorSpec::balanced(n, RatingScale(m), q), n, m, q);
    const double avg = worst_regret(AggregatorSpec::average(), n, m, q);
    if (avg - bea < closest_gap) {
      closest_gap = avg - bea;
      closest_q = q;
    }
    if (!first && bea > avg) first = q;
  }
  Outcome out;
  out.passed = first && *first >= 0.70 - 1e-9 && *first <= 0.95 + 1e-9;
  if (first) {
    out.detail = printf_string("first q with bea > avg: %.2f", *first);
  } else {
    out.detail = printf_string(
        "bea stays below avg for every q in [0.01, 0.99]; smallest margin "
        "avg-bea=%.3g at q=%.2f",
        closest_gap, closest_q);
  }
  return out;
}

Outcome spectral_is_worst() {
  Outcome out{true, {}};
  const int n = 20, m = 5;
  for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double spe = worst_regret(AggregatorSpec::spectral(), n, m, q);
    const double bea = worst_regret(AggregatorSpec::balanced(n, RatingScale(m), q), n, m, q);
    const double paa = worst_regret(AggregatorSpec::polarizing(q), n, m, q);
    const bool ok = spe > bea && spe > paa;
    out.passed = out.passed && ok;
    append(out.detail, printf_string("q=%.1f spe=%.4f bea=%.4f paa=%.4f%s", q, spe,
                                     bea, paa, ok ? "" : " FAIL"));
  }
  return out;
}

// -- 7 ----------------------------------------------------------------------

Outcome convergence_in_n() {
  const double q = 0.5;
  const InformationStructure theta(CategoricalDistribution({0.67, 0.33}),
                                   ParticipationProfile({q, 1.0}, q));
  const auto paa = AggregatorSpec::polarizing(q);
  Outcome out{true, {}};
  std::optional<McEstimate> prev;
  for (int n : {20, 40, 80, 160}) {
    const McEstimate est = mc_regret({paa, theta, SampleSize::finite(n)}, 100'000,
                                     1000 + static_cast<std::uint64_t>(n));
    if (prev) {
      const double slack =
          2.0 * std::hypot(prev->std_error, est.std_error);
      if (est.estimate > prev->estimate + slack) out.passed = false;
    }
    append(out.detail,
           printf_string("n=%d %.5f±%.5f", n, est.estimate, est.std_error));
    prev = est;
  }
  return out;
}

// -- 8 ----------------------------------------------------------------------

Outcome biased_sample_average() {
  const InformationStructure theta(CategoricalDistribution({0.5, 0.5}),
                                   ParticipationProfile({1.0, 0.5}, 0.5));
  const auto sample = simulate(theta, 100'000, RngSpec{2026, 0});
  const double avg = simple_average(sample.observed, RatingScale(2));
  const double target = 4.0 / 3.0;
  return {std::abs(avg - target) <= 0.01,
          printf_string("observed average %.5f, target %.5f", avg, target)};
}

// -- 9 ----------------------------------------------------------------------

Outcome bounds_match_brute_force() {
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int failures = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + trial % 3;
    const double q = 0.05 + 0.95 * unit(rng);
    std::vector<double> p(m);
    double total = 0.0;
    for (double& v : p) {
      v = unit(rng) < 0.15 ? 0.0 : unit(rng);
      total += v;
    }
    if (total == 0.0) {
      p[0] = 1.0;
      total = 1.0;
    }
    for (double& v : p) v /= total;
    const EmpiricalDistribution hat(p);
    const PaaBounds b = paa_bounds(hat, q);
    const auto exact = oracle::extreme_monotone_range(p, q);
    const auto grid = oracle::box_grid_range(p, q, 0.05);
    const double err =
        std::max(std::abs(b.lower - exact.lower), std::abs(b.upper - exact.upper));
    worst = std::max(worst, err);
    const bool bracket = b.lower <= grid.lower + 1e-12 && grid.upper <= b.upper + 1e-12;
    if (err > 1e-12 || !bracket) ++failures;
  }
  return {failures == 0,
          printf_string("(a) %d/200 mismatches, max |bound-oracle|=%.3g", failures, worst)};
}

Outcome monte_carlo_matches_exact() {
  std::mt19937_64 rng(92);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = 10, m = 3;
  int outliers = 0;
  double worst_z = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double q = 0.1 + 0.8 * unit(rng);
    const InformationStructure theta = random_structure(rng, m, q);
    AggregatorSpec spec;
    switch (i % 4) {
      case 0: spec = AggregatorSpec::average(); break;
      case 1: spec = AggregatorSpec::spectral(); break;
      case 2: spec = AggregatorSpec::polarizing(q); break;
      default: spec = AggregatorSpec::balanced(n, RatingScale(m), q); break;
    }
    const RegretQuery query{spec, theta, SampleSize::finite(n)};
    const double exact = exact_regret(query);
    const McEstimate est = mc_regret(query, 100'000, 5000 + i);
    const double z = std::abs(est.estimate - exact) / est.std_error;
    worst_z = std::max(worst_z, z);
    if (z > 4.0) ++outliers;
  }
  return {outliers <= 1,
          printf_string("(b) %d/20 beyond 4 s.e., max z=%.2f", outliers, worst_z)};
}

ObservedHistogram random_histogram(std::mt19937_64& rng, int m) {
  std::uniform_int_distribution<int> count(0, 6), hidden(0, 5);
  ObservedHistogram h;
  h.counts.resize(m);
  for (auto& c : h.counts) c = count(rng);
  h.unobserved = hidden(rng);
  if (h.total() == 0) h.counts[0] = 1;
  return h;
}

Outcome full_participation_is_average() {
  std::mt19937_64 rng(93);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int m = 2 + i % 6;
    ObservedHistogram h = random_histogram(rng, m);
    if (h.observed_total() == 0) h.counts[m - 1] = 1;
    const double avg = simple_average(h, RatingScale(m));
    const double p = aggregate(AggregatorSpec::polarizing(1.0), h);
    worst = std::max(worst, std::abs(avg - p));
  }
  return {worst <= 1e-12, printf_string("(c) max |paa-avg| at q=1: %.3g", worst)};
}

Outcome reversal_symmetry() {
  std::mt19937_64 rng(94);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int m = 2 + i % 5;
    const double q = 0.05 + 0.95 * unit(rng);
    const ObservedHistogram h = random_histogram(rng, m);
    ObservedHistogram r = h;
    std::reverse(r.counts.begin(), r.counts.end());
    const int n = static_cast<int>(h.total());
    for (const auto& spec :
         {AggregatorSpec::average(), AggregatorSpec::polarizing(q),
          AggregatorSpec::balanced(n, RatingScale(m), q)}) {
      const double sum = aggregate(spec, h) + aggregate(spec, r);
      worst = std::max(worst, std::abs(sum - (m + 1)));
    }
  }
  return {worst <= 1e-9,
          printf_string("(d) max |f(h)+f(rev h)-(m+1)|=%.3g", worst)};
}

// -- 10 ---------------------------------------------------------------------

Outcome fixture_pipeline(const std::optional<std::filesystem::path>& fixture,
                         bool fixture_optional) {
  Outcome out{true, {}};
  const int expected_map[10] = {1, 1, 1, 1, 2, 3, 4, 5, 6, 7};
  for (int s = 1; s <= 10; ++s) {
    if (remap_rating(s) != expected_map[s - 1]) {
      out.passed = false;
      append(out.detail, printf_string("remap(%d)=%d", s, remap_rating(s)));
    }
  }
  if (!fixture) {
    if (fixture_optional) {
      append(out.detail, "remap checked; no ratings file given, pipeline skipped");
      return out;
    }
    return {false, "no ratings file given"};
  }
  const FixtureExpectation want;
  const auto posted = read_ratings_csv(*fixture, {"posted", std::nullopt}, true);
  const auto survey = read_ratings_csv(*fixture, {"survey", std::nullopt}, true);
  const RatingScale m(want.m);
  const ObservedHistogram h =
      build_histogram(posted, m, static_cast<std::int64_t>(survey.size()));
  const double avg = aggregate(AggregatorSpec::average(), h);
  const double paa = aggregate(AggregatorSpec::polarizing(want.q), h);
  const double bea =
      aggregate(AggregatorSpec::balanced(want.n, m, want.q), h);
  const double err = std::max({std::abs(avg - want.avg), std::abs(paa - want.paa),
                               std::abs(bea - want.bea)});
  out.passed = out.passed && static_cast<int>(survey.size()) == want.n && err <= 1e-6;
  append(out.detail,
         printf_string("n=%zu observed=%lld avg=%.9f paa=%.9f bea=%.9f max err=%.3g",
                       survey.size(), static_cast<long long>(h.observed_total()), avg,
                       paa, bea, err));
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double budget;
  bool fast;
  std::function<Outcome()> run;
};

Outcome combine(std::initializer_list<std::function<Outcome()>> parts) {
  Outcome out{true, {}};
  for (const auto& part : parts) {
    const Outcome o = part();
    out.passed = out.passed && o.passed;
    append(out.detail, o.detail);
  }
  return out;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  const std::vector<Criterion> all = {
      {1, "worst-pair closed form", 1.0, true, closed_form_worst_pair},
      {2, "worst empirical distribution", 5.0, true, worst_empirical_distribution},
      {3, "known-n best-response identity", 30.0, false, best_response_identity},
      {4, "known-n tracks lower bound (n=20, m=3)", 300.0, false, known_n_tracks_bound},
      {5, "known-n vs average crossover (n=10, m=3)", 300.0, false, known_n_crossover},
      {6, "spectral baseline ordering (n=20, m=5)", 600.0, false, spectral_is_worst},
      {7, "unknown-n regret decreases with n", 120.0, false, convergence_in_n},
      {8, "biased sample average", 1.0, true, biased_sample_average},
      {9, "oracle equivalence suite", 120.0, true,
       [&] {
         if (options.fast) {
           return combine({full_participation_is_average, reversal_symmetry});
         }
         return combine({bounds_match_brute_force, monte_carlo_matches_exact,
                         full_participation_is_average, reversal_symmetry});
       }},
      {10, "ratings file pipeline", 1.0, true,
       [&] { return fixture_pipeline(options.fixture, options.fast); }},
  };
  std::vector<CriterionResult> results;
  for (const Criterion& c : all) {
    if (options.fast && !c.fast) continue;
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), c.id) == options.only.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget) {
      o.passed = false;
      append(o.detail, printf_string("over budget: %.2f s > %.0f s", secs, c.budget));
    }
    results.push_back({c.id, c.name, o.passed, o.detail, secs, c.budget});
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  return printf_string("[%s] %d %s (%.2f s / %.0f s): ", r.passed ? "PASS" : "FAIL",
                       r.id, r.name.c_str(), r.seconds, r.budget_seconds) +
         r.detail;
}

}  // namespace robust_rating
