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

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mimosim/campaign.hpp"

namespace {

int command_run(const std::string &config_path, const std::string &output_dir, const std::string &format,
                const std::optional<std::uint64_t> &seed, int threads) {
    const mimosim::RunConfig config = mimosim::parse_config(config_path);
    mimosim::CampaignOptions options;
    options.output_dir = output_dir;
    options.format = format == "json" ? mimosim::OutputFormat::json : mimosim::OutputFormat::csv;
    options.seed_override = seed;
    options.threads = threads;

    const mimosim::OutputBundle bundle = mimosim::run_campaign(config, options);
    for (const mimosim::RunOutput &run : bundle.runs)
        std::cout << run.run_id << ": median " << mimosim::format_double(run.summary.median)
                  << " bits/s/Hz, 95%-likely " << mimosim::format_double(run.summary.likely_95)
                  << " bits/s/Hz\n";
    for (const auto &table : bundle.sweep_tables)
        std::cout << "sweep table: " << table.string() << "\n";
    std::cout << bundle.runs.size() << " run(s) written to " << output_dir << "\n";
    return 0;
}

int command_emit_fixture(const mimosim::TensorDims &dims, std::uint64_t seed, const std::string &output) {
    mimosim::emit_fixture_tensor(dims, seed, output);
    std::cout << "wrote " << output << " (" << dims.freq_points << "x" << dims.bs_ports << "x"
              << dims.ue_ports << ")\n";
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Monte Carlo comparison of co-located, semi-distributed, and fully-distributed "
                 "multi-user MIMO topologies"};
    app.require_subcommand(1);

    // run
    auto *run = app.add_subcommand("run", "Execute a campaign described by a JSON config");
    std::string config_path;
    run->add_option("--config", config_path, "Campaign config file")->required();
    std::string output_dir = "out";
    run->add_option("--output-dir", output_dir, "Directory for result files");
    std::string format = "csv";
    run->add_option("--format", format, "Tabular output format")->check(CLI::IsMember({"csv", "json"}));
    std::optional<std::uint64_t> seed;
    run->add_option("--seed", seed, "Override every scenario master seed");
    int threads = 1;
    run->add_option("--threads", threads, "Worker threads (results do not depend on this)")
        ->check(CLI::PositiveNumber);

    // emit-fixture
    auto *emit = app.add_subcommand("emit-fixture", "Write a deterministic pseudo-random channel tensor");
    mimosim::TensorDims dims;
    emit->add_option("--freq-points", dims.freq_points, "Frequency points")->required();
    emit->add_option("--bs-ports", dims.bs_ports, "Total BS ports")->required();
    emit->add_option("--ue-ports", dims.ue_ports, "Total UE ports")->required();
    emit->add_option("--bs-ports-per-location", dims.bs_ports_per_location, "BS ports per location");
    emit->add_option("--ue-ports-per-location", dims.ue_ports_per_location, "UE ports per location");
    emit->add_option("--freq-start-hz", dims.frequency_start_hz, "First frequency point in Hz");
    emit->add_option("--freq-spacing-hz", dims.frequency_spacing_hz, "Frequency spacing in Hz");
    std::uint64_t fixture_seed = 0;
    emit->add_option("--seed", fixture_seed, "Fill seed")->required();
    std::string fixture_output;
    emit->add_option("--output", fixture_output, "Destination file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return command_run(config_path, output_dir, format, seed, threads);
        return command_emit_fixture(dims, fixture_seed, fixture_output);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
