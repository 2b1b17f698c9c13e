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

#ifndef MIMOSIM_CAMPAIGN_HPP
#define MIMOSIM_CAMPAIGN_HPP

#include "mimosim/config.hpp"

namespace mimosim {

enum class OutputFormat { csv, json };

struct CampaignOptions {
    std::filesystem::path output_dir = "out";
    OutputFormat format = OutputFormat::csv;
    std::optional<std::uint64_t> seed_override; // replaces every scenario seed
    int threads = 1;                            // never changes results, only wall time
};

struct RunOutput {
    std::string run_id;
    Topology topology;
    PrecoderKind precoder = PrecoderKind::mrt;
    ScenarioSummary summary;
    std::filesystem::path samples_path;
    std::filesystem::path cdf_path;
    std::filesystem::path summary_path;
};

struct OutputBundle {
    std::vector<RunOutput> runs;
    std::vector<std::filesystem::path> sweep_tables;
};

// Expands every campaign entry into concrete (topology, precoder) runs,
// executes them, and writes samples, CDF, and summary files per run plus
// one sweep table per sweep entry. Output is a pure function of the
// config and seed: reruns are byte-identical. On an evaluator error the
// failing run writes nothing, a FAILED.json marker is left in the output
// directory, and the error is rethrown.
OutputBundle run_campaign(const RunConfig &config, const CampaignOptions &options);

// Shortest round-trip decimal form of a double (to_chars).
std::string format_double(double value);

} // namespace mimosim

#endif
