// SPDX-License-Identifier: Apache-2.0
//
// mimosim: Monte Carlo simulator for co-located, semi-distributed, and
// fully-distributed multi-user MIMO antenna topologies
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MIMOSIM_RANDOM_HPP
#define MIMOSIM_RANDOM_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace mimosim {

// Substream labels. Every random quantity of a sampling realization comes
// from its own stream keyed by (master_seed, realization, purpose), so the
// draws stay independent of each other and of evaluation order.
enum class StreamPurpose : std::uint64_t {
    generic = 0,
    placement = 1,
    shadowing = 2,
    small_scale = 3,
    subsample_plan = 4,
    fixture_fill = 5,
    topology_search = 6,
};

// Deterministic xoshiro256++ stream. The state is derived from the key
// triple through a splitmix64 schedule, so streams with different keys are
// statistically independent and reproducible across platforms.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed)
        : RandomStream(seed, 0, StreamPurpose::generic) {}

    RandomStream(std::uint64_t master_seed, std::uint64_t realization, StreamPurpose purpose);

    std::uint64_t next_u64();

    // Uniform double in [0, 1) with 53 random bits.
    double uniform();

    double uniform(double lo, double hi);

    // Unbiased uniform integer in [0, bound); bound must be positive.
    std::uint64_t uniform_below(std::uint64_t bound);

    // Standard normal deviates (Box-Muller). normal() consumes a full pair
    // and returns the cosine branch so the stream position does not depend
    // on caller history.
    double normal();
    std::pair<double, double> normal_pair();

    // First `draws` elements of a partial Fisher-Yates shuffle of
    // {0, ..., population-1}, returned in selection order.
    std::vector<int> sample_without_replacement(int population, int draws);

  private:
    std::array<std::uint64_t, 4> state_{};
};

} // namespace mimosim

#endif
