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

#ifndef MIMOSIM_TEST_SUPPORT_HPP
#define MIMOSIM_TEST_SUPPORT_HPP

#include <filesystem>
#include <fstream>
#include <string>

#include "mimosim/channel.hpp"

namespace mimosim::test {

// i.i.d. unit-variance complex Gaussian channel of the given shape.
inline ChannelMatrix random_channel(int antennas, int ues, std::uint64_t seed) {
    const Topology topology = make_topology(antennas, antennas, ues);
    LargeScaleFading beta;
    beta.ap_count = antennas;
    beta.ue_count = ues;
    beta.gains.assign(static_cast<std::size_t>(antennas) * static_cast<std::size_t>(ues), 1.0);
    RandomStream rng(seed, 0, StreamPurpose::small_scale);
    return generate_synthetic_channel(topology, beta, rng);
}

inline std::string slurp(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / ("mimosim_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace mimosim::test

#endif
