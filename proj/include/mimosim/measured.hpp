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

#ifndef MIMOSIM_MEASURED_HPP
#define MIMOSIM_MEASURED_HPP

#include <cstdint>
#include <filesystem>

#include "mimosim/channel.hpp"

namespace mimosim {

struct TensorDims {
    std::uint32_t freq_points = 0;
    std::uint32_t bs_ports = 0;
    std::uint32_t ue_ports = 0;
    std::uint32_t bs_ports_per_location = 8;
    std::uint32_t ue_ports_per_location = 8;
    double frequency_start_hz = 3.3e9;
    double frequency_spacing_hz = 250e3;

    friend bool operator==(const TensorDims &, const TensorDims &) = default;
};

// Calibrated channel frequency responses with axes frequency point, BS
// port, UE port. Ports are grouped into physical locations; global port b
// maps to (location b / ports_per_location, port b % ports_per_location).
// Immutable after construction and safe to share across threads.
class MeasuredTensor {
  public:
    MeasuredTensor(TensorDims dims, std::vector<Complex> values);

    const TensorDims &dims() const { return dims_; }
    const std::vector<Complex> &values() const { return values_; }

    Complex at(std::uint32_t freq, std::uint32_t bs_port, std::uint32_t ue_port) const {
        return values_[(static_cast<std::size_t>(freq) * dims_.bs_ports + bs_port) * dims_.ue_ports + ue_port];
    }

    int bs_location_count() const { return static_cast<int>(dims_.bs_ports / dims_.bs_ports_per_location); }
    int ue_location_count() const { return static_cast<int>(dims_.ue_ports / dims_.ue_ports_per_location); }

    friend bool operator==(const MeasuredTensor &, const MeasuredTensor &) = default;

  private:
    TensorDims dims_;
    std::vector<Complex> values_;
};

// Binary container: magic "MCHT", u32 version 1, u32 freq_points, u32
// bs_ports, u32 ue_ports, u32 bs_ports_per_location, u32
// ue_ports_per_location, f64 frequency_start_hz, f64 frequency_spacing_hz,
// then freq_points*bs_ports*ue_ports little-endian f64 (real, imag) pairs
// in frequency-major, then BS-port, then UE-port order.
MeasuredTensor load_measured_tensor(const std::filesystem::path &path);
void write_measured_tensor(const MeasuredTensor &tensor, const std::filesystem::path &path);

// Deterministic pseudo-random tensor (unit-variance complex Gaussian
// entries) for tests and dry runs.
MeasuredTensor make_fixture_tensor(const TensorDims &dims, std::uint64_t seed);
void emit_fixture_tensor(const TensorDims &dims, std::uint64_t seed, const std::filesystem::path &path);

// Index selections that carve an M x K channel matrix out of a tensor.
struct SubsamplePlan {
    std::uint32_t frequency_index = 0;
    std::vector<int> bs_locations;          // L distinct location indices
    std::vector<std::vector<int>> bs_ports; // per selected location, M/L distinct ports
    std::vector<int> ue_locations;          // K distinct location indices
    std::vector<int> ue_ports;              // one port per selected UE location
};

// Random sub-sampling: uniform frequency point, BS locations and
// per-location ports without replacement, UE locations without
// replacement with one random port each.
SubsamplePlan make_subsample_plan(const MeasuredTensor &tensor, const Topology &topology, RandomStream &rng);

// Pure projection of the planned tensor entries into an M x K channel
// matrix; antenna rows are grouped per AP in plan order.
ChannelMatrix subsample_measured(const MeasuredTensor &tensor, const SubsamplePlan &plan,
                                 int realization_index = 0);

} // namespace mimosim

#endif
