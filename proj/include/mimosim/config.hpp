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

#ifndef MIMOSIM_CONFIG_HPP
#define MIMOSIM_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "mimosim/evaluator.hpp"

namespace mimosim {

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string &message) : std::runtime_error("config: " + message) {}
};

struct GeometryConfig {
    double room_side_m = 6.0;
    int ap_ring_count = 64;
    double ap_spacing_m = 0.375;
    double ue_area_side_m = 4.5;
};

struct PowerDefaults {
    double synthetic_tx_to_noise_db = 75.0;
    double measured_tx_to_noise_db = 83.0;
};

// How the AP count is chosen for each antenna count of an antenna sweep.
enum class ApCountPolicy { colocated, fully, best_semi, explicit_count };

struct AntennaSweep {
    std::vector<int> antenna_counts;
    int ue_count = 4;
    ApCountPolicy policy = ApCountPolicy::best_semi;
    int explicit_ap_count = 0; // policy == explicit_count only
};

struct ApSweep {
    int total_antennas = 0;
    std::vector<int> ap_counts;
    int ue_count = 4;
};

// One campaign entry: either an explicit topology list, an antenna-count
// sweep, or an AP-count sweep.
struct ScenarioSpec {
    std::string name;
    bool measured = false;
    std::filesystem::path tensor_path; // measured sources only
    std::vector<PrecoderKind> precoders;
    int realizations = 10000;
    std::uint64_t seed = 0;
    std::optional<double> tx_to_noise_db; // overrides the per-source default
    bool zf_unit_power_columns = false;

    std::vector<Topology> topologies;
    std::optional<AntennaSweep> antenna_sweep;
    std::optional<ApSweep> ap_sweep;
};

struct RunConfig {
    GeometryConfig geometry;
    FadingParams fading;
    PowerDefaults power;
    std::vector<ScenarioSpec> campaign;
};

// Parses and validates a JSON config. Unknown keys are rejected; every
// error names the offending field. Relative tensor paths resolve against
// the config file's directory.
RunConfig parse_config(const std::filesystem::path &path);
RunConfig parse_config_text(const std::string &text, const std::filesystem::path &base_dir);

RoomGeometry build_geometry(const GeometryConfig &geometry);

} // namespace mimosim

#endif
