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

#include <algorithm>
#include <cmath>
#include <set>

#include <doctest.h>

#include "mimosim/random.hpp"

using namespace mimosim;

TEST_CASE("streams with identical keys replay exactly") {
    RandomStream a(42, 7, StreamPurpose::placement);
    RandomStream b(42, 7, StreamPurpose::placement);
    for (int i = 0; i < 100; ++i)
        CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("streams with different keys diverge") {
    RandomStream base(42, 7, StreamPurpose::placement);
    RandomStream other_purpose(42, 7, StreamPurpose::shadowing);
    RandomStream other_realization(42, 8, StreamPurpose::placement);
    RandomStream other_seed(43, 7, StreamPurpose::placement);
    int matches = 0;
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t v = base.next_u64();
        matches += (v == other_purpose.next_u64());
        matches += (v == other_realization.next_u64());
        matches += (v == other_seed.next_u64());
    }
    CHECK(matches == 0);
}

TEST_CASE("uniform stays in [0, 1)") {
    RandomStream rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("uniform_below respects the bound and covers it") {
    RandomStream rng(2);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t v = rng.uniform_below(7);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
    CHECK(rng.uniform_below(1) == 0);
    CHECK_THROWS_AS(rng.uniform_below(0), std::invalid_argument);
}

TEST_CASE("normal deviates have the right first two moments") {
    RandomStream rng(3);
    const int n = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / n;
    const double variance = sum_sq / n - mean * mean;
    CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(variance == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("normal_pair components are uncorrelated") {
    RandomStream rng(4);
    const int n = 100000;
    double sum_xy = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto [x, y] = rng.normal_pair();
        sum_xy += x * y;
    }
    CHECK(std::abs(sum_xy / n) < 0.01);
}

TEST_CASE("sample_without_replacement draws distinct values") {
    RandomStream rng(5);
    const auto draws = rng.sample_without_replacement(64, 16);
    CHECK(draws.size() == 16);
    std::set<int> unique(draws.begin(), draws.end());
    CHECK(unique.size() == 16);
    for (int v : draws) {
        CHECK(v >= 0);
        CHECK(v < 64);
    }
}

TEST_CASE("sample_without_replacement exhausts the population") {
    RandomStream rng(6);
    auto draws = rng.sample_without_replacement(10, 10);
    std::sort(draws.begin(), draws.end());
    for (int i = 0; i < 10; ++i)
        CHECK(draws[static_cast<std::size_t>(i)] == i);
}

TEST_CASE("sample_without_replacement rejects bad arguments") {
    RandomStream rng(7);
    CHECK_THROWS_AS(rng.sample_without_replacement(4, 5), std::invalid_argument);
    CHECK_THROWS_AS(rng.sample_without_replacement(-1, 0), std::invalid_argument);
    CHECK(rng.sample_without_replacement(4, 0).empty());
}
