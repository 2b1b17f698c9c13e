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

#ifndef MIMOSIM_PRECODER_HPP
#define MIMOSIM_PRECODER_HPP

#include <string_view>

#include "mimosim/channel.hpp"

namespace mimosim {

// Channel with every column scaled to unit Euclidean norm. The original
// norms are recorded so entries * diag(column_norms) recovers the source.
struct NormalizedChannelMatrix {
    ComplexMatrix entries;
    std::vector<double> column_norms;
};

enum class PrecoderKind { mrt, zf };

std::string_view precoder_name(PrecoderKind kind);
PrecoderKind precoder_from_name(std::string_view name);

struct PrecodingMatrix {
    ComplexMatrix entries;
    PrecoderKind kind = PrecoderKind::mrt;
};

// Scales each column of the channel to unit norm. A zero column (UE with
// no channel) is rejected.
NormalizedChannelMatrix normalize_columns(const ChannelMatrix &channel);

// Maximum-ratio transmission: the entrywise complex conjugate of the
// normalized channel.
PrecodingMatrix mrt_precoder(const NormalizedChannelMatrix &normalized);

// Zero-forcing: conj(Hn) (Hn^T conj(Hn))^-1, which satisfies
// G^T Hn = I. Columns keep their natural norms unless unit_power_columns
// is set, in which case each column is rescaled to unit norm afterwards.
// Rejects channels with fewer antennas than UEs and Gram matrices whose
// 1-norm condition estimate exceeds max_condition.
PrecodingMatrix zf_precoder(const NormalizedChannelMatrix &normalized, double max_condition = 1e12,
                            bool unit_power_columns = false);

} // namespace mimosim

#endif
