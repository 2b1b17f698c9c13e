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

#include "mimosim/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mimosim {

namespace {

constexpr std::uint64_t k_golden = 0x9e3779b97f4a7c15ull;

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t splitmix_next(std::uint64_t &x) {
    x += k_golden;
    return mix64(x);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t realization, StreamPurpose purpose) {
    std::uint64_t key = mix64(master_seed + k_golden);
    key = mix64(key ^ (realization + 0xbf58476d1ce4e5b9ull));
    key = mix64(key ^ (static_cast<std::uint64_t>(purpose) + 0x94d049bb133111ebull));
    for (auto &word : state_)
        word = splitmix_next(key);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0)
        state_[0] = 1; // all-zero state is a fixed point of xoshiro
}

std::uint64_t RandomStream::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RandomStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
    return lo + uniform() * (hi - lo);
}

std::uint64_t RandomStream::uniform_below(std::uint64_t bound) {
    if (bound == 0)
        throw std::invalid_argument("uniform_below: bound must be positive");
    // reject the range that would bias the modulo
    const std::uint64_t reject_below = (0 - bound) % bound;
    std::uint64_t x = next_u64();
    while (x < reject_below)
        x = next_u64();
    return x % bound;
}

std::pair<double, double> RandomStream::normal_pair() {
    const double u1 = uniform();
    const double u2 = uniform();
    // 1 - u1 lies in (0, 1], keeping the log argument away from zero
    const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

double RandomStream::normal() {
    return normal_pair().first;
}

std::vector<int> RandomStream::sample_without_replacement(int population, int draws) {
    if (population < 0 || draws < 0 || draws > population)
        throw std::invalid_argument("sample_without_replacement: need 0 <= draws <= population");
    std::vector<int> pool(static_cast<std::size_t>(population));
    for (int i = 0; i < population; ++i)
        pool[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < draws; ++i) {
        const int j = i + static_cast<int>(uniform_below(static_cast<std::uint64_t>(population - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(draws));
    return pool;
}

} // namespace mimosim
