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

#include "robust_rating/sampling.hpp"

#include <algorithm>
#include <random>

#include "robust_rating/error.hpp"

namespace robust_rating {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t draw_binomial(std::int64_t trials, double p, StreamEngine& eng) {
  if (trials <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  std::binomial_distribution<std::int64_t> dist(trials, p);
  return dist(eng);
}

}  // namespace

RngSpec RngSpec::child(std::uint64_t index) const {
  return {mix64(seed ^ mix64(stream + kGolden)), index};
}

StreamEngine::StreamEngine(const RngSpec& spec)
    : key_(mix64(mix64(spec.seed) + kGolden * (spec.stream + 1))) {}

StreamEngine::result_type StreamEngine::operator()() {
  return mix64(key_ + kGolden * ++counter_);
}

FullHistogram sample_full(const CategoricalDistribution& p, std::int64_t n,
                          const RngSpec& rng) {
  require(n >= 0, "sample size must be nonnegative");
  StreamEngine eng(rng);
  const auto probs = p.probs();
  FullHistogram out{std::vector<std::int64_t>(probs.size(), 0)};
  std::int64_t remaining = n;
  double mass = 1.0;
  // Sequential conditional binomials realize the multinomial.
  for (std::size_t i = 0; i + 1 < probs.size() && remaining > 0; ++i) {
    const double share = mass > 0.0 ? std::clamp(probs[i] / mass, 0.0, 1.0)
                                    : 0.0;
    out.counts[i] = draw_binomial(remaining, share, eng);
    remaining -= out.counts[i];
    mass -= probs[i];
  }
  out.counts.back() += remaining;
  return out;
}

ObservedHistogram thin(const FullHistogram& full, const ParticipationProfile& g,
                       const RngSpec& rng) {
  require(static_cast<int>(full.counts.size()) == g.size(),
          "histogram and participation profile differ in size");
  StreamEngine eng(rng);
  ObservedHistogram out;
  out.counts.resize(full.counts.size());
  std::int64_t kept = 0;
  for (std::size_t i = 0; i < full.counts.size(); ++i) {
    out.counts[i] = draw_binomial(full.counts[i], g.probs()[i], eng);
    kept += out.counts[i];
  }
  out.unobserved = full.total() - kept;
  return out;
}

SimulatedSample simulate(const InformationStructure& theta, std::int64_t n,
                         const RngSpec& rng) {
  FullHistogram full = sample_full(theta.p(), n, rng.child(0));
  ObservedHistogram observed = thin(full, theta.g(), rng.child(1));
  return {std::move(full), std::move(observed)};
}

}  // namespace robust_rating
