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

#ifndef MIMOSIM_CHANNEL_HPP
#define MIMOSIM_CHANNEL_HPP

#include "mimosim/linalg.hpp"
#include "mimosim/random.hpp"
#include "mimosim/topology.hpp"

namespace mimosim {

// Complex channel between every BS antenna (rows) and every UE (columns)
// for one sampling realization.
struct ChannelMatrix {
    ComplexMatrix entries;
    Topology topology;
    int realization_index = 0;
};

// Validates dimensions against the topology and rejects non-finite entries.
ChannelMatrix make_channel_matrix(ComplexMatrix entries, const Topology &topology, int realization_index = 0);

struct FadingParams {
    double carrier_frequency_hz = 3.5e9;
    double shadow_sigma_db = 2.0;
    double min_distance_m = 0.5;  // clamp below which the free-space model is not trusted
    double height_offset_m = 0.0; // optional fixed vertical AP/UE separation
};

// Friis free-space loss 20*log10(4*pi*d*f/c) in dB, positive for the
// far-field distances used here.
double free_space_path_loss_db(double distance_m, double frequency_hz);

// Linear power gain between each AP and UE, shared by all antennas of the
// AP. Row-major [ap][ue].
struct LargeScaleFading {
    int ap_count = 0;
    int ue_count = 0;
    std::vector<double> gains;

    double operator()(int ap, int ue) const {
        return gains[static_cast<std::size_t>(ap) * static_cast<std::size_t>(ue_count) +
                     static_cast<std::size_t>(ue)];
    }
};

// Distance path loss plus log-normal shadowing in the dB domain:
// gain_dB = -FSPL(max(min_distance, d)) + N(0, shadow_sigma_dB^2). The
// shadowing normal is always consumed from the stream, even at sigma 0.
LargeScaleFading draw_large_scale_fading(const Placement &placement, const FadingParams &params,
                                         RandomStream &rng);

// Draws entry (m, k) as a zero-mean complex Gaussian whose real and
// imaginary parts each have variance beta(ap_of(m), k) / 2. Antennas are
// grouped into contiguous row blocks of total_antennas / ap_count per AP,
// in placement order. Entries are drawn column by column.
ChannelMatrix generate_synthetic_channel(const Topology &topology, const LargeScaleFading &beta,
                                         RandomStream &rng, int realization_index = 0);

} // namespace mimosim

#endif
