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

#pragma once

#include <cstdint>
#include <limits>
#include <utility>

#include "robust_rating/model.hpp"

namespace robust_rating {

/// (seed, stream) fully determines a random sequence. Monte Carlo trials use
/// stream = trial index.
struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  /// Independent sub-stream derived from this one.
  RngSpec child(std::uint64_t index) const;
};

/// Counter-based SplitMix64 generator keyed by an RngSpec. Satisfies
/// std::uniform_random_bit_generator.
class StreamEngine {
 public:
  using result_type = std::uint64_t;

  explicit StreamEngine(const RngSpec& spec);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// n i.i.d. ratings from p, as a histogram (multinomial draw).
FullHistogram sample_full(const CategoricalDistribution& p, std::int64_t n,
                          const RngSpec& rng);

/// Keeps each rating r independently with probability g_r.
ObservedHistogram thin(const FullHistogram& full, const ParticipationProfile& g,
                       const RngSpec& rng);

struct SimulatedSample {
  FullHistogram full;
  ObservedHistogram observed;
};

/// sample_full followed by thin, on sub-streams 0 and 1 of `rng`.
SimulatedSample simulate(const InformationStructure& theta, std::int64_t n,
                         const RngSpec& rng);

}  // namespace robust_rating
