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

#include <cmath>
#include <limits>

#include <doctest.h>

#include "mimosim/channel.hpp"

using namespace mimosim;

TEST_CASE("free-space path loss matches the Friis values") {
    // 20*log10(4*pi*1*3.5e9 / 2.998e8) = 43.329 dB
    CHECK(free_space_path_loss_db(1.0, 3.5e9) == doctest::Approx(43.3287).epsilon(2e-4));
    // doubling the distance adds 20*log10(2) dB
    const double delta = free_space_path_loss_db(2.0, 3.5e9) - free_space_path_loss_db(1.0, 3.5e9);
    CHECK(delta == doctest::Approx(6.0206).epsilon(1e-6));
    // the geometric-mean distance of the room puts the loss near 56.5 dB
    CHECK(free_space_path_loss_db(4.57, 3.5e9) == doctest::Approx(56.5).epsilon(2e-3));
    CHECK(free_space_path_loss_db(10.0, 3.5e9) > free_space_path_loss_db(5.0, 3.5e9));

    CHECK_THROWS_AS(free_space_path_loss_db(0.0, 3.5e9), std::invalid_argument);
    CHECK_THROWS_AS(free_space_path_loss_db(-1.0, 3.5e9), std::invalid_argument);
    CHECK_THROWS_AS(free_space_path_loss_db(1.0, 0.0), std::invalid_argument);
}

namespace {

Placement fixed_placement(std::vector<Point2> aps, std::vector<Point2> ues) {
    Placement placement;
    placement.ap_positions = std::move(aps);
    placement.ue_positions = std::move(ues);
    placement.ap_indices.resize(placement.ap_positions.size());
    for (std::size_t i = 0; i < placement.ap_indices.size(); ++i)
        placement.ap_indices[i] = static_cast<int>(i);
    return placement;
}

} // namespace

TEST_CASE("zero shadowing reproduces the pure path-loss gain") {
    const Placement placement = fixed_placement({{0.0, 0.0}}, {{1.0, 0.0}});
    FadingParams params;
    params.shadow_sigma_db = 0.0;

    RandomStream rng(1, 1, StreamPurpose::shadowing);
    const LargeScaleFading beta = draw_large_scale_fading(placement, params, rng);
    const double expected = std::pow(10.0, -free_space_path_loss_db(1.0, params.carrier_frequency_hz) / 10.0);
    CHECK(beta(0, 0) == doctest::Approx(expected).epsilon(1e-14));

    // deterministic given the placement
    RandomStream rng2(99, 3, StreamPurpose::shadowing);
    const LargeScaleFading again = draw_large_scale_fading(placement, params, rng2);
    CHECK(again(0, 0) == beta(0, 0));
}

TEST_CASE("distance clamp and height offset shape the effective distance") {
    FadingParams params;
    params.shadow_sigma_db = 0.0;

    // both distances fall below the 0.5 m clamp and give identical gains
    RandomStream rng(2);
    const LargeScaleFading near =
        draw_large_scale_fading(fixed_placement({{0.0, 0.0}}, {{0.1, 0.0}, {0.4, 0.0}}), params, rng);
    CHECK(near(0, 0) == near(0, 1));

    // a vertical offset lengthens the path
    FadingParams lifted = params;
    lifted.height_offset_m = 1.0;
    RandomStream rng2(3);
    const LargeScaleFading flat =
        draw_large_scale_fading(fixed_placement({{0.0, 0.0}}, {{2.0, 0.0}}), params, rng2);
    RandomStream rng3(3);
    const LargeScaleFading raised =
        draw_large_scale_fading(fixed_placement({{0.0, 0.0}}, {{2.0, 0.0}}), lifted, rng3);
    CHECK(raised(0, 0) < flat(0, 0));
    const double expected = std::pow(10.0, -free_space_path_loss_db(std::hypot(2.0, 1.0),
                                                                    params.carrier_frequency_hz) /
                                                10.0);
    CHECK(raised(0, 0) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("gain shrinks strictly with distance when shadowing is off") {
    FadingParams params;
    params.shadow_sigma_db = 0.0;
    RandomStream rng(4);
    const LargeScaleFading beta = draw_large_scale_fading(
        fixed_placement({{0.0, 0.0}}, {{1.0, 0.0}, {2.0, 0.0}, {4.5, 0.0}}), params, rng);
    CHECK(beta(0, 0) > beta(0, 1));
    CHECK(beta(0, 1) > beta(0, 2));
}

TEST_CASE("shadowing spread matches the configured sigma") {
    const Placement placement = fixed_placement({{0.0, 0.0}}, {{2.0, 0.0}});
    FadingParams params; // 2 dB shadowing
    const double path_loss_db = free_space_path_loss_db(2.0, params.carrier_frequency_hz);

    const int n = 100000;
    double sum = 0.0, sum_sq = 0.0;
    RandomStream rng(5, 0, StreamPurpose::shadowing);
    for (int i = 0; i < n; ++i) {
        const LargeScaleFading beta = draw_large_scale_fading(placement, params, rng);
        const double gain_db = 10.0 * std::log10(beta(0, 0));
        const double shadow = gain_db + path_loss_db;
        sum += shadow;
        sum_sq += shadow * shadow;
    }
    const double mean = sum / n;
    const double std_dev = std::sqrt(sum_sq / n - mean * mean);
    CHECK(std::abs(mean) < 0.05);
    CHECK(std_dev == doctest::Approx(2.0).epsilon(0.025));
}

TEST_CASE("fading parameter validation") {
    const Placement placement = fixed_placement({{0.0, 0.0}}, {{1.0, 0.0}});
    RandomStream rng(6);
    FadingParams bad;
    bad.shadow_sigma_db = -1.0;
    CHECK_THROWS_AS(draw_large_scale_fading(placement, bad, rng), std::invalid_argument);
    bad = FadingParams{};
    bad.min_distance_m = 0.0;
    CHECK_THROWS_AS(draw_large_scale_fading(placement, bad, rng), std::invalid_argument);
    bad = FadingParams{};
    bad.carrier_frequency_hz = -3.5e9;
    CHECK_THROWS_AS(draw_large_scale_fading(placement, bad, rng), std::invalid_argument);
}

namespace {

LargeScaleFading constant_beta(int ap_count, int ue_count, double value) {
    LargeScaleFading beta;
    beta.ap_count = ap_count;
    beta.ue_count = ue_count;
    beta.gains.assign(static_cast<std::size_t>(ap_count) * static_cast<std::size_t>(ue_count), value);
    return beta;
}

} // namespace

TEST_CASE("synthetic entries carry the per-AP-group variance") {
    // distinct beta per AP group; entry variance must follow its row block
    const Topology topology = make_topology(8, 4, 2);
    LargeScaleFading beta = constant_beta(4, 2, 0.0);
    for (int l = 0; l < 4; ++l)
        for (int k = 0; k < 2; ++k)
            beta.gains[static_cast<std::size_t>(l * 2 + k)] = 0.25 * (l + 1) * (k + 1);

    const int n = 100000;
    std::vector<double> power_sum(8 * 2, 0.0);
    RandomStream rng(7, 0, StreamPurpose::small_scale);
    for (int i = 0; i < n; ++i) {
        const ChannelMatrix h = generate_synthetic_channel(topology, beta, rng);
        for (int k = 0; k < 2; ++k)
            for (int m = 0; m < 8; ++m)
                power_sum[static_cast<std::size_t>(k * 8 + m)] += std::norm(h.entries(m, k));
    }
    for (int k = 0; k < 2; ++k)
        for (int m = 0; m < 8; ++m) {
            const int l = m / 2; // two antennas per AP
            const double variance = power_sum[static_cast<std::size_t>(k * 8 + m)] / n;
            CHECK(variance == doctest::Approx(beta(l, k)).epsilon(0.03));
        }
}

TEST_CASE("unit-beta entries have unit variance and zero mean") {
    const Topology topology = make_topology(4, 4, 2);
    const LargeScaleFading beta = constant_beta(4, 2, 1.0);

    const int n = 100000;
    double power = 0.0;
    Complex mean_acc = 0.0;
    RandomStream rng(8, 0, StreamPurpose::small_scale);
    for (int i = 0; i < n; ++i) {
        const ChannelMatrix h = generate_synthetic_channel(topology, beta, rng);
        power += std::norm(h.entries(0, 0));
        mean_acc += h.entries(1, 1);
    }
    CHECK(power / n == doctest::Approx(1.0).epsilon(0.02));
    // component std is sqrt(1/2); the mean of n draws has std sqrt(1/(2n))
    const double sigma_mean = std::sqrt(0.5 / n);
    CHECK(std::abs(mean_acc.real() / n) < 3.0 * sigma_mean);
    CHECK(std::abs(mean_acc.imag() / n) < 3.0 * sigma_mean);
}

TEST_CASE("distinct entries are uncorrelated") {
    const Topology topology = make_topology(4, 2, 2);
    const LargeScaleFading beta = constant_beta(2, 2, 1.0);

    const int n = 100000;
    double cross_same_col = 0.0, cross_same_row = 0.0;
    RandomStream rng(9, 0, StreamPurpose::small_scale);
    for (int i = 0; i < n; ++i) {
        const ChannelMatrix h = generate_synthetic_channel(topology, beta, rng);
        cross_same_col += h.entries(0, 0).real() * h.entries(1, 0).real();
        cross_same_row += h.entries(0, 0).real() * h.entries(0, 1).real();
    }
    // products of independent zero-mean components with variance 1/2
    CHECK(std::abs(cross_same_col / n) < 0.02);
    CHECK(std::abs(cross_same_row / n) < 0.02);
}

TEST_CASE("channel construction validates shapes and values") {
    const Topology topology = make_topology(4, 2, 2);
    CHECK_THROWS_AS(make_channel_matrix(ComplexMatrix(3, 2), topology), std::invalid_argument);
    CHECK_THROWS_AS(make_channel_matrix(ComplexMatrix(4, 3), topology), std::invalid_argument);

    ComplexMatrix bad(4, 2);
    bad(0, 0) = Complex{std::numeric_limits<double>::infinity(), 0.0};
    CHECK_THROWS_AS(make_channel_matrix(std::move(bad), topology), std::invalid_argument);

    RandomStream rng(10);
    const LargeScaleFading wrong = constant_beta(3, 2, 1.0);
    CHECK_THROWS_AS(generate_synthetic_channel(topology, wrong, rng), std::invalid_argument);
}
