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

#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "robust_rating/adversary.hpp"
#include "robust_rating/aggregators.hpp"
#include "robust_rating/data_io.hpp"
#include "robust_rating/error.hpp"
#include "robust_rating/regret.hpp"
#include "robust_rating/sampling.hpp"
#include "robust_rating/validation.hpp"

namespace robust_rating::cli {
namespace {

enum class Command { kAggregate, kCurve, kLowerBound, kWorstCase, kSimulate, kSelftest };

struct CliConfig {
  Command command = Command::kAggregate;
  int m = 0;
  std::optional<int> n;
  std::optional<double> q;
  std::string q_grid;
  std::string aggregators;
  std::string family;
  double grid_step = 1e-3;
  std::optional<std::int64_t> trials;
  std::uint64_t seed = 0;
  bool asymptotic = false;
  bool remap = false;
  std::string input;
  std::string column = "rating";
  std::string output;
  std::string svg;
  std::string counts;
  std::optional<double> a_star;
  std::string p;
  std::string g;
};

// Bad flag values or combinations, reported before any computation.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

template <class T>
T parse_number(const std::string& text, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError(std::string("invalid ") + what + " '" + text + "'");
  }
  return value;
}

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_number<T>(item, what));
  return out;
}

std::vector<AggregatorKind> parse_aggregators(const std::string& text) {
  std::vector<AggregatorKind> out;
  for (const auto& name : split(text, ',')) {
    try {
      out.push_back(parse_aggregator(name));
    } catch (const Error&) {
      throw UsageError("unknown aggregator '" + name + "' (expected avg, spe, bea, paa)");
    }
  }
  return out;
}

bool uses_bea(const std::vector<AggregatorKind>& kinds) {
  return std::find(kinds.begin(), kinds.end(), AggregatorKind::kBalancedExtremes) !=
         kinds.end();
}

std::vector<SearchFamily> parse_families(const std::string& text) {
  if (text.empty()) return default_families();
  if (text == "all") {
    return {SearchFamily::kTwoPointMonotone, SearchFamily::kTwoPointUniformG,
            SearchFamily::kGeneralGrid};
  }
  try {
    return {parse_family(text)};
  } catch (const Error&) {
    throw UsageError("unknown family '" + text +
                     "' (expected two-point, uniform-g, general, all)");
  }
}

std::vector<double> parse_q_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("--q-grid expects start:stop:step");
  const double start = parse_number<double>(parts[0], "q-grid start");
  const double stop = parse_number<double>(parts[1], "q-grid stop");
  const double step = parse_number<double>(parts[2], "q-grid step");
  if (!(step > 0.0)) throw UsageError("--q-grid step must be positive");
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double q = std::round((start + i * step) * 1e12) / 1e12;
    if (q > stop + 1e-12) break;
    out.push_back(q);
  }
  if (out.empty()) throw UsageError("--q-grid is empty");
  return out;
}

void check_q(double q) {
  if (!(q > 0.0 && q <= 1.0)) throw UsageError("q must lie in (0, 1]");
}

void check_m(int m) {
  if (m < 2) throw UsageError("--m must be at least 2");
}

double require_q(const CliConfig& c) {
  if (!c.q) throw UsageError("--q is required");
  check_q(*c.q);
  return *c.q;
}

SampleSize sample_size(const CliConfig& c, bool needs_finite) {
  if (c.asymptotic) {
    if (c.n) throw UsageError("--n and --asymptotic are mutually exclusive");
    if (needs_finite) throw UsageError("bea requires a finite --n");
    if (c.trials) throw UsageError("--trials needs a finite --n");
    return SampleSize::asymptotic();
  }
  if (!c.n) throw UsageError("--n or --asymptotic is required");
  if (*c.n < 1) throw UsageError("--n must be at least 1");
  return SampleSize::finite(*c.n);
}

EvaluationMode evaluation_mode(const CliConfig& c) {
  EvaluationMode mode;
  if (c.trials) {
    if (*c.trials < 1) throw UsageError("--trials must be at least 1");
    mode.monte_carlo = MonteCarloSettings{*c.trials, c.seed};
  }
  return mode;
}

SearchGrid search_grid(const CliConfig& c) {
  if (!(c.grid_step > 0.0 && c.grid_step <= 1.0)) {
    throw UsageError("--grid-step must lie in (0, 1]");
  }
  return SearchGrid{c.grid_step, 0.1, 0.1};
}

AggregatorSpec make_spec(AggregatorKind kind, const CliConfig& c, int m, double q) {
  switch (kind) {
    case AggregatorKind::kAverage:
      return AggregatorSpec::average();
    case AggregatorKind::kSpectral:
      return AggregatorSpec::spectral();
    case AggregatorKind::kPolarizingAveraging:
      return AggregatorSpec::polarizing(q);
    case AggregatorKind::kBalancedExtremes:
      if (c.a_star) return AggregatorSpec::balanced(BeaParams{*c.n, q, *c.a_star});
      return AggregatorSpec::balanced(*c.n, RatingScale(m), q);
  }
  throw UsageError("unknown aggregator");
}

void write_or_print(const std::string& path, const std::string& text,
                    std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) fail(ErrorCode::kIoError, "cannot write " + path);
  file << text;
  if (!file) fail(ErrorCode::kIoError, "write failed for " + path);
}

// -- subcommands ------------------------------------------------------------

int cmd_aggregate(const CliConfig& c, std::ostream& out) {
  check_m(c.m);
  const double q = require_q(c);
  const auto kinds = parse_aggregators(c.aggregators.empty() ? "avg,paa" : c.aggregators);
  if (uses_bea(kinds) && !c.n) throw UsageError("bea requires --n");
  if (c.a_star && !(*c.a_star >= 0.0 && *c.a_star <= 1.0)) {
    throw UsageError("--a-star must lie in [0, 1]");
  }
  if (c.counts.empty() == c.input.empty()) {
    throw UsageError("give exactly one of --counts or --input");
  }
  const RatingScale m(c.m);
  ObservedHistogram h;
  if (!c.counts.empty()) {
    const auto counts = parse_list<std::int64_t>(c.counts, "count");
    if (static_cast<int>(counts.size()) != c.m) {
      throw UsageError("--counts needs exactly m values");
    }
    for (auto v : counts) {
      if (v < 0) throw UsageError("counts must be nonnegative");
    }
    h.counts = counts;
    if (c.n) {
      if (*c.n < h.observed_total()) {
        fail(ErrorCode::kBadTotal, "--n is smaller than the observed count");
      }
      h.unobserved = *c.n - h.observed_total();
    }
  } else {
    const auto records = read_ratings_csv(c.input, {c.column, std::nullopt}, c.remap);
    h = build_histogram(records, m, c.n ? std::optional<std::int64_t>(*c.n)
                                        : std::nullopt);
  }
  nlohmann::json scores = nlohmann::json::object();
  for (AggregatorKind kind : kinds) {
    const double v = aggregate(make_spec(kind, c, c.m, q), h);
    out << aggregator_name(kind) << '=' << fixed6(v) << '\n';
    scores[std::string(aggregator_name(kind))] = v;
  }
  if (!c.output.empty()) write_or_print(c.output, scores.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_curve(const CliConfig& c, std::ostream& out) {
  check_m(c.m);
  if (c.q_grid.empty()) throw UsageError("--q-grid is required");
  const auto qs = parse_q_grid(c.q_grid);
  for (double q : qs) check_q(q);
  const auto kinds =
      parse_aggregators(c.aggregators.empty() ? "avg,bea,paa" : c.aggregators);
  const SampleSize n = sample_size(c, uses_bea(kinds));
  const auto families = parse_families(c.family);
  const SearchGrid grid = search_grid(c);
  const EvaluationMode mode = evaluation_mode(c);
  const RatingScale m(c.m);

  std::vector<CurvePoint> points;
  for (double q : qs) {
    for (AggregatorKind kind : kinds) {
      const auto rec = worst_case(make_spec(kind, c, c.m, q), n, m, q, families, grid, mode);
      points.push_back({q, std::string(aggregator_name(kind)), rec.regret});
    }
    if (!n.is_asymptotic()) {
      points.push_back({q, "lower_bound", lower_bound(n.value(), m, q).value});
    }
  }
  if (c.output.empty()) {
    out << "q,aggregator,regret,ln_regret\n";
    for (const auto& pt : points) {
      out << format_double(pt.q) << ',' << pt.aggregator << ','
          << format_double(pt.regret) << ',';
      if (auto ln = pt.ln_regret()) out << format_double(*ln);
      out << '\n';
    }
  } else {
    write_curve_csv(points, c.output);
  }
  if (!c.svg.empty()) render_svg_line_chart(points, c.svg);
  return kExitOk;
}

int cmd_lower_bound(const CliConfig& c, std::ostream& out) {
  check_m(c.m);
  const double q = require_q(c);
  if (!c.n || *c.n < 1) throw UsageError("--n (at least 1) is required");
  const LowerBound lb = lower_bound(*c.n, RatingScale(c.m), q);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "value=%.6f a*=%.3f\n", lb.value, lb.a_star);
  out << buf;
  return kExitOk;
}

int cmd_worst_case(const CliConfig& c, std::ostream& out) {
  check_m(c.m);
  const double q = require_q(c);
  const auto kinds = parse_aggregators(c.aggregators.empty() ? "paa" : c.aggregators);
  if (kinds.size() != 1) throw UsageError("worst-case takes a single aggregator");
  const SampleSize n = sample_size(c, uses_bea(kinds));
  const auto families = parse_families(c.family);
  const auto rec = worst_case(make_spec(kinds.front(), c, c.m, q), n, RatingScale(c.m),
                              q, families, search_grid(c), evaluation_mode(c));
  write_or_print(c.output, report_json(rec), out);
  return kExitOk;
}

int cmd_simulate(const CliConfig& c, std::ostream& out) {
  const double q = require_q(c);
  if (!c.n || *c.n < 1) throw UsageError("--n (at least 1) is required");
  if (c.p.empty() || c.g.empty()) throw UsageError("--p and --g are required");
  const auto p = parse_list<double>(c.p, "probability");
  const auto g = parse_list<double>(c.g, "participation probability");
  if (p.size() != g.size()) throw UsageError("--p and --g differ in length");
  InformationStructure theta = [&] {
    try {
      return InformationStructure(CategoricalDistribution(p), ParticipationProfile(g, q));
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }();
  const auto sample = simulate(theta, *c.n, RngSpec{c.seed, 0});
  std::string text = "rating,full_count,observed_count\n";
  for (std::size_t r = 0; r < p.size(); ++r) {
    text += std::to_string(r + 1) + ',' + std::to_string(sample.full.counts[r]) + ',' +
            std::to_string(sample.observed.counts[r]) + '\n';
  }
  text += "unobserved,," + std::to_string(sample.observed.unobserved) + '\n';
  write_or_print(c.output, text, out);
  return kExitOk;
}

int cmd_selftest(const CliConfig& c, std::ostream& out) {
  AcceptanceOptions opts;
  opts.fast = true;
  if (!c.input.empty()) opts.fixture = c.input;
  bool ok = true;
  for (const auto& r : run_acceptance(opts)) {
    out << format_result(r) << '\n';
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitSelftestFailed;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return kExitUsage;
    case ErrorCode::kAllUnobserved:
    case ErrorCode::kInconsistentCounts:
    case ErrorCode::kEnumerationTooLarge:
    case ErrorCode::kNoReports:
      return kExitComputation;
    case ErrorCode::kOutOfRange:
    case ErrorCode::kParseError:
    case ErrorCode::kBadScale:
    case ErrorCode::kBadTotal:
    case ErrorCode::kIoError:
      return kExitIo;
  }
  return kExitComputation;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig c;
  CLI::App app{"Bias-robust rating aggregation and regret analysis", "robust-rating"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--m", c.m, "Rating scale size");
    sub->add_option("--q", c.q, "Lower bound on participation probability");
    sub->add_option("--n", c.n, "Sample size (raters, observed or not)");
  };
  auto search = [&](CLI::App* sub) {
    sub->add_option("--aggregators", c.aggregators, "Comma list of avg,spe,bea,paa");
    sub->add_option("--family", c.family,
                    "two-point, uniform-g, general or all (default: two-point and uniform-g)");
    sub->add_option("--grid-step", c.grid_step, "Adversary parameter step");
    sub->add_option("--trials", c.trials, "Monte Carlo trials instead of exact enumeration");
    sub->add_option("--seed", c.seed, "Random seed");
    sub->add_flag("--asymptotic", c.asymptotic, "Evaluate the n -> infinity limit");
    sub->add_option("--a-star", c.a_star, "Override the bea parameter");
  };

  auto* agg = app.add_subcommand("aggregate", "Score a histogram or ratings file");
  common(agg);
  agg->add_option("--aggregators", c.aggregators, "Comma list of avg,spe,bea,paa");
  agg->add_option("--counts", c.counts, "Observed counts n_1,...,n_m");
  agg->add_option("--input", c.input, "Ratings CSV");
  agg->add_option("--column", c.column, "Rating column name");
  agg->add_flag("--remap", c.remap, "Collapse a 1..10 scale to 1..7");
  agg->add_option("--a-star", c.a_star, "Override the bea parameter");
  agg->add_option("--output", c.output, "Also write scores as JSON");
  agg->callback([&] { c.command = Command::kAggregate; });

  auto* curve = app.add_subcommand("curve", "Worst-case regret across a q grid");
  common(curve);
  search(curve);
  curve->add_option("--q-grid", c.q_grid, "start:stop:step");
  curve->add_option("--output", c.output, "Curve CSV path (default stdout)");
  curve->add_option("--svg", c.svg, "Also render an SVG chart");
  curve->callback([&] { c.command = Command::kCurve; });

  auto* lb = app.add_subcommand("lower-bound", "Lower bound on worst-case regret");
  common(lb);
  lb->callback([&] { c.command = Command::kLowerBound; });

  auto* wc = app.add_subcommand("worst-case", "Worst information structure for one aggregator");
  common(wc);
  search(wc);
  wc->add_option("--output", c.output, "JSON report path (default stdout)");
  wc->callback([&] { c.command = Command::kWorstCase; });

  auto* sim = app.add_subcommand("simulate", "Sample a full and an observed histogram");
  common(sim);
  sim->add_option("--p", c.p, "Rating distribution p_1,...,p_m");
  sim->add_option("--g", c.g, "Participation probabilities g_1,...,g_m");
  sim->add_option("--seed", c.seed, "Random seed");
  sim->add_option("--output", c.output, "CSV path (default stdout)");
  sim->callback([&] { c.command = Command::kSimulate; });

  auto* self = app.add_subcommand("selftest", "Run the fast acceptance checks");
  self->add_option("--input", c.input, "Ratings fixture for the pipeline check");
  self->callback([&] { c.command = Command::kSelftest; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    switch (c.command) {
      case Command::kAggregate:
        return cmd_aggregate(c, out);
      case Command::kCurve:
        return cmd_curve(c, out);
      case Command::kLowerBound:
        return cmd_lower_bound(c, out);
      case Command::kWorstCase:
        return cmd_worst_case(c, out);
      case Command::kSimulate:
        return cmd_simulate(c, out);
      case Command::kSelftest:
        return cmd_selftest(c, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what();
    if (e.code() == ErrorCode::kEnumerationTooLarge) {
      err << " (pass --trials to estimate by Monte Carlo)";
    }
    err << '\n';
    return exit_code_for(e.code());
  }
  return kExitUsage;
}

}  // namespace robust_rating::cli
