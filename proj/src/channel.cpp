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

#include "mimosim/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mimosim {

namespace {
constexpr double k_speed_of_light = 299792458.0; // m/s

void validate_fading_params(const FadingParams &params) {
    if (!(params.carrier_frequency_hz > 0.0))
        throw std::invalid_argument("fading: carrier_frequency_hz must be positive");
    if (params.shadow_sigma_db < 0.0)
        throw std::invalid_argument("fading: shadow_sigma_db must be non-negative");
    if (!(params.min_distance_m > 0.0))
        throw std::invalid_argument("fading: min_distance_m must be positive");
    if (params.height_offset_m < 0.0)
        throw std::invalid_argument("fading: height_offset_m must be non-negative");
}
} // namespace

ChannelMatrix make_channel_matrix(ComplexMatrix entries, const Topology &topology, int realization_index) {
    if (entries.rows() != topology.total_antennas || entries.cols() != topology.ue_count)
        throw std::invalid_argument("channel: entries are " + std::to_string(entries.rows()) + "x" +
                                    std::to_string(entries.cols()) + " but topology requires " +
                                    std::to_string(topology.total_antennas) + "x" +
                                    std::to_string(topology.ue_count));
    if (!entries.all_finite())
        throw std::invalid_argument("channel: entries must be finite");
    return ChannelMatrix{std::move(entries), topology, realization_index};
}

double free_space_path_loss_db(double distance_m, double frequency_hz) {
    if (!(distance_m > 0.0))
        throw std::invalid_argument("free_space_path_loss: distance must be positive");
    if (!(frequency_hz > 0.0))
        throw std::invalid_argument("free_space_path_loss: frequency must be positive");
    return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m * frequency_hz / k_speed_of_light);
}

LargeScaleFading draw_large_scale_fading(const Placement &placement, const FadingParams &params,
                                         RandomStream &rng) {
    validate_fading_params(params);
    const int ap_count = static_cast<int>(placement.ap_positions.size());
    const int ue_count = static_cast<int>(placement.ue_positions.size());
    if (ap_count == 0 || ue_count == 0)
        throw std::invalid_argument("fading: placement has no APs or no UEs");

    LargeScaleFading fading;
    fading.ap_count = ap_count;
    fading.ue_count = ue_count;
    fading.gains.reserve(static_cast<std::size_t>(ap_count) * static_cast<std::size_t>(ue_count));
    for (int l = 0; l < ap_count; ++l) {
        const Point2 ap = placement.ap_positions[static_cast<std::size_t>(l)];
        for (int k = 0; k < ue_count; ++k) {
            const Point2 ue = placement.ue_positions[static_cast<std::size_t>(k)];
            const double planar = std::hypot(ap.x - ue.x, ap.y - ue.y);
            const double distance = std::max(params.min_distance_m,
                                             std::hypot(planar, params.height_offset_m));
            const double shadow_db = params.shadow_sigma_db * rng.normal();
            const double gain_db = -free_space_path_loss_db(distance, params.carrier_frequency_hz) + shadow_db;
            fading.gains.push_back(std::pow(10.0, gain_db / 10.0));
        }
    }
    return fading;
}

ChannelMatrix generate_synthetic_channel(const Topology &topology, const LargeScaleFading &beta,
                                         RandomStream &rng, int realization_index) {
    if (beta.ap_count != topology.ap_count || beta.ue_count != topology.ue_count)
        throw std::invalid_argument("channel: large-scale fading is " + std::to_string(beta.ap_count) + "x" +
                                    std::to_string(beta.ue_count) + " but topology requires " +
                                    std::to_string(topology.ap_count) + "x" +
                                    std::to_string(topology.ue_count));

    const int antennas = topology.total_antennas;
    const int per_ap = antennas_per_ap(topology);
    ComplexMatrix entries(antennas, topology.ue_count);
    for (int k = 0; k < topology.ue_count; ++k)
        for (int m = 0; m < antennas; ++m) {
            const int l = m / per_ap;
            const double scale = std::sqrt(beta(l, k) / 2.0);
            const auto [re, im] = rng.normal_pair();
            entries(m, k) = Complex{re * scale, im * scale};
        }
    return make_channel_matrix(std::move(entries), topology, realization_index);
}

} // namespace mimosim
