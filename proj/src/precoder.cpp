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

#include "mimosim/precoder.hpp"

#include <stdexcept>
#include <string>

namespace mimosim {

std::string_view precoder_name(PrecoderKind kind) {
    return kind == PrecoderKind::mrt ? "mrt" : "zf";
}

PrecoderKind precoder_from_name(std::string_view name) {
    if (name == "mrt")
        return PrecoderKind::mrt;
    if (name == "zf")
        return PrecoderKind::zf;
    throw std::invalid_argument("unknown precoder '" + std::string(name) + "' (expected mrt or zf)");
}

NormalizedChannelMatrix normalize_columns(const ChannelMatrix &channel) {
    const ComplexMatrix &h = channel.entries;
    NormalizedChannelMatrix out;
    out.entries = h;
    out.column_norms.reserve(static_cast<std::size_t>(h.cols()));
    for (int k = 0; k < h.cols(); ++k) {
        const double norm = column_norm(h, k);
        if (norm == 0.0)
            throw std::invalid_argument("normalize_columns: column " + std::to_string(k) +
                                        " is zero (UE with no channel)");
        for (auto &v : out.entries.column(k))
            v /= norm;
        out.column_norms.push_back(norm);
    }
    return out;
}

PrecodingMatrix mrt_precoder(const NormalizedChannelMatrix &normalized) {
    return PrecodingMatrix{conjugate(normalized.entries), PrecoderKind::mrt};
}

PrecodingMatrix zf_precoder(const NormalizedChannelMatrix &normalized, double max_condition,
                            bool unit_power_columns) {
    const ComplexMatrix &hn = normalized.entries;
    const int antennas = hn.rows();
    const int ues = hn.cols();
    if (antennas < ues)
        throw std::invalid_argument("zf_precoder: needs at least as many antennas (" +
                                    std::to_string(antennas) + ") as UEs (" + std::to_string(ues) + ")");

    // gram = Hn^T conj(Hn), Hermitian positive semi-definite
    const ComplexMatrix hn_conj = conjugate(hn);
    ComplexMatrix gram(ues, ues);
    for (int i = 0; i < ues; ++i)
        for (int j = 0; j < ues; ++j)
            gram(i, j) = column_product(hn, i, hn_conj, j);

    const ComplexMatrix gram_inverse = solve_linear(gram, ComplexMatrix::identity(ues));
    const double condition_estimate = norm_1(gram) * norm_1(gram_inverse);
    if (condition_estimate > max_condition)
        throw SingularMatrixError("zf_precoder: Gram matrix condition estimate " +
                                      std::to_string(condition_estimate) + " exceeds " +
                                      std::to_string(max_condition),
                                  condition_estimate);

    PrecodingMatrix precoder{multiply(hn_conj, gram_inverse), PrecoderKind::zf};
    if (unit_power_columns) {
        for (int k = 0; k < ues; ++k) {
            const double norm = column_norm(precoder.entries, k);
            for (auto &v : precoder.entries.column(k))
                v /= norm;
        }
    }
    return precoder;
}

} // namespace mimosim
