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

#include "mimosim/campaign.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace mimosim {

namespace {

using nlohmann::json;

constexpr int k_max_cdf_points = 2000;

std::string_view policy_name(ApCountPolicy policy) {
    switch (policy) {
    case ApCountPolicy::colocated:
        return "colocated";
    case ApCountPolicy::fully:
        return "fully";
    case ApCountPolicy::best_semi:
        return "best_semi";
    case ApCountPolicy::explicit_count:
    default:
        return "explicit";
    }
}

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        throw std::runtime_error("write failure on " + path.string());
}

// Down-samples the CDF to at most k_max_cdf_points quantile points; the
// printed probability is the true empirical probability of the kept order
// statistic, and the last point always has probability 1.
std::vector<CdfPoint> downsample_cdf(const std::vector<CdfPoint> &cdf) {
    const std::size_t n = cdf.size();
    if (n <= static_cast<std::size_t>(k_max_cdf_points))
        return cdf;
    std::vector<CdfPoint> kept;
    kept.reserve(static_cast<std::size_t>(k_max_cdf_points));
    for (int j = 1; j <= k_max_cdf_points; ++j) {
        const double q = static_cast<double>(j) / k_max_cdf_points;
        std::size_t index = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
        index = std::min(index, n) - 1;
        kept.push_back(cdf[index]);
    }
    return kept;
}

std::string samples_csv(const SEReport &report) {
    const int ues = report.scenario.topology.ue_count;
    std::string out = "# schema_version=1\nrealization,ue,se_bits_per_s_per_hz\n";
    for (std::size_t i = 0; i < report.samples.size(); ++i) {
        const auto s = i / static_cast<std::size_t>(ues) + 1;
        const auto k = i % static_cast<std::size_t>(ues) + 1;
        out += std::to_string(s);
        out += ',';
        out += std::to_string(k);
        out += ',';
        out += format_double(report.samples[i]);
        out += '\n';
    }
    return out;
}

std::string samples_json(const SEReport &report) {
    const int ues = report.scenario.topology.ue_count;
    json rows = json::array();
    for (std::size_t i = 0; i < report.samples.size(); ++i)
        rows.push_back({i / static_cast<std::size_t>(ues) + 1, i % static_cast<std::size_t>(ues) + 1,
                        report.samples[i]});
    json doc = {{"schema_version", 1},
                {"columns", {"realization", "ue", "se_bits_per_s_per_hz"}},
                {"rows", std::move(rows)}};
    return doc.dump() + "\n";
}

std::string cdf_csv(const std::vector<CdfPoint> &cdf) {
    std::string out = "# schema_version=1\nse_bits_per_s_per_hz,probability\n";
    for (const CdfPoint &point : cdf) {
        out += format_double(point.value);
        out += ',';
        out += format_double(point.probability);
        out += '\n';
    }
    return out;
}

std::string cdf_json(const std::vector<CdfPoint> &cdf) {
    json rows = json::array();
    for (const CdfPoint &point : cdf)
        rows.push_back({point.value, point.probability});
    json doc = {{"schema_version", 1},
                {"columns", {"se_bits_per_s_per_hz", "probability"}},
                {"rows", std::move(rows)}};
    return doc.dump() + "\n";
}

json summary_json(const std::string &run_id, const ScenarioSpec &spec, const SEReport &report) {
    const Scenario &scenario = report.scenario;
    json doc;
    doc["schema_version"] = 1;
    doc["run_id"] = run_id;
    json topology = {{"total_antennas", scenario.topology.total_antennas},
                     {"ap_count", scenario.topology.ap_count},
                     {"ue_count", scenario.topology.ue_count},
                     {"class", std::string(topology_class_name(classify(scenario.topology)))}};
    json scenario_echo = {{"name", spec.name},
                          {"source", std::string(channel_source_name(scenario.source))},
                          {"topology", std::move(topology)},
                          {"precoder", std::string(precoder_name(scenario.precoder))},
                          {"realizations", scenario.realizations},
                          {"master_seed", scenario.master_seed},
                          {"tx_to_noise_db", scenario.power.tx_to_noise_ratio_db},
                          {"zf_unit_power_columns", scenario.zf_unit_power_columns}};
    if (spec.measured)
        scenario_echo["tensor_path"] = spec.tensor_path.string();
    doc["scenario"] = std::move(scenario_echo);
    doc["results"] = {{"sample_count", report.samples.size()},
                      {"median_bits_per_s_per_hz", report.summary.median},
                      {"likely95_bits_per_s_per_hz", report.summary.likely_95},
                      {"mean_bits_per_s_per_hz", report.summary.mean},
                      {"precoder_column_power_min", report.summary.precoder_column_power_min},
                      {"precoder_column_power_max", report.summary.precoder_column_power_max}};
    return doc;
}

struct SweepRow {
    Topology topology;
    std::string policy;
    PrecoderKind precoder = PrecoderKind::mrt;
    ScenarioSummary summary;
};

std::string sweep_csv(const std::vector<SweepRow> &rows) {
    std::string out = "# schema_version=1\n"
                      "total_antennas,ap_count,ue_count,policy,precoder,"
                      "likely95_bits_per_s_per_hz,median_bits_per_s_per_hz,mean_bits_per_s_per_hz\n";
    for (const SweepRow &row : rows) {
        out += std::to_string(row.topology.total_antennas);
        out += ',';
        out += std::to_string(row.topology.ap_count);
        out += ',';
        out += std::to_string(row.topology.ue_count);
        out += ',';
        out += row.policy;
        out += ',';
        out += precoder_name(row.precoder);
        out += ',';
        out += format_double(row.summary.likely_95);
        out += ',';
        out += format_double(row.summary.median);
        out += ',';
        out += format_double(row.summary.mean);
        out += '\n';
    }
    return out;
}

std::string sweep_json(const std::vector<SweepRow> &rows) {
    json out_rows = json::array();
    for (const SweepRow &row : rows)
        out_rows.push_back({row.topology.total_antennas, row.topology.ap_count, row.topology.ue_count,
                            row.policy, std::string(precoder_name(row.precoder)), row.summary.likely_95,
                            row.summary.median, row.summary.mean});
    json doc = {{"schema_version", 1},
                {"columns",
                 {"total_antennas", "ap_count", "ue_count", "policy", "precoder",
                  "likely95_bits_per_s_per_hz", "median_bits_per_s_per_hz", "mean_bits_per_s_per_hz"}},
                {"rows", std::move(out_rows)}};
    return doc.dump() + "\n";
}

class CampaignWriter {
  public:
    CampaignWriter(const RunConfig &config, const CampaignOptions &options)
        : config_(config), options_(options), geometry_(build_geometry(config.geometry)) {
        std::filesystem::create_directories(options_.output_dir);
        std::filesystem::remove(options_.output_dir / "FAILED.json");
    }

    OutputBundle execute() {
        for (const ScenarioSpec &spec : config_.campaign)
            run_spec(spec);
        return std::move(bundle_);
    }

  private:
    const char *table_extension() const { return options_.format == OutputFormat::csv ? ".csv" : ".json"; }

    Scenario base_scenario(const ScenarioSpec &spec) const {
        Scenario scenario;
        if (spec.measured) {
            scenario.source = MeasuredSource{tensor_cache_};
        } else {
            scenario.source = SyntheticSource{geometry_, config_.fading};
        }
        scenario.power.tx_to_noise_ratio_db = spec.tx_to_noise_db.value_or(
            spec.measured ? config_.power.measured_tx_to_noise_db : config_.power.synthetic_tx_to_noise_db);
        scenario.realizations = spec.realizations;
        scenario.master_seed = options_.seed_override.value_or(spec.seed);
        scenario.zf_unit_power_columns = spec.zf_unit_power_columns;
        return scenario;
    }

    void run_spec(const ScenarioSpec &spec) {
        if (spec.measured)
            tensor_cache_ = std::make_shared<const MeasuredTensor>(load_measured_tensor(spec.tensor_path));
        else
            tensor_cache_.reset();

        if (!spec.topologies.empty()) {
            for (const Topology &topology : spec.topologies)
                for (PrecoderKind precoder : spec.precoders) {
                    Scenario scenario = base_scenario(spec);
                    scenario.topology = topology;
                    scenario.precoder = precoder;
                    execute_run(spec, scenario, {});
                }
            return;
        }

        std::vector<SweepRow> rows;
        if (spec.antenna_sweep) {
            const AntennaSweep &sweep = *spec.antenna_sweep;
            for (int antennas : sweep.antenna_counts)
                for (PrecoderKind precoder : spec.precoders) {
                    Scenario scenario = base_scenario(spec);
                    scenario.precoder = precoder;
                    std::string policy(policy_name(sweep.policy));
                    switch (sweep.policy) {
                    case ApCountPolicy::colocated:
                        scenario.topology = make_topology(antennas, 1, sweep.ue_count);
                        break;
                    case ApCountPolicy::fully:
                        scenario.topology = make_topology(antennas, antennas, sweep.ue_count);
                        break;
                    case ApCountPolicy::explicit_count:
                        scenario.topology = make_topology(antennas, sweep.explicit_ap_count, sweep.ue_count);
                        break;
                    case ApCountPolicy::best_semi: {
                        // the winner reruns under its search seed, so the
                        // emitted files match the search metric exactly
                        Scenario search_base = base_scenario(spec);
                        search_base.precoder = precoder;
                        search_base.topology = make_topology(antennas, 1, sweep.ue_count);
                        const BestSemiResult best = guarded(spec, antennas, [&] {
                            return best_semi_distributed_ap_count(antennas, sweep.ue_count, search_base,
                                                                  options_.threads);
                        });
                        scenario.topology = make_topology(antennas, best.ap_count, sweep.ue_count);
                        scenario.master_seed = topology_search_seed(scenario.master_seed, best.ap_count);
                        break;
                    }
                    }
                    const RunOutput output = execute_run(spec, scenario, policy);
                    rows.push_back({scenario.topology, policy, precoder, output.summary});
                }
        } else if (spec.ap_sweep) {
            const ApSweep &sweep = *spec.ap_sweep;
            for (int ap_count : sweep.ap_counts)
                for (PrecoderKind precoder : spec.precoders) {
                    Scenario scenario = base_scenario(spec);
                    scenario.precoder = precoder;
                    scenario.topology = make_topology(sweep.total_antennas, ap_count, sweep.ue_count);
                    const RunOutput output = execute_run(spec, scenario, "fixed");
                    rows.push_back({scenario.topology, "fixed", precoder, output.summary});
                }
        }

        const std::filesystem::path table_path = options_.output_dir / (spec.name + "_sweep" + table_extension());
        write_file(table_path, options_.format == OutputFormat::csv ? sweep_csv(rows) : sweep_json(rows));
        bundle_.sweep_tables.push_back(table_path);
    }

    template <typename Fn>
    auto guarded(const ScenarioSpec &spec, int antennas, Fn &&fn) -> decltype(fn()) {
        try {
            return fn();
        } catch (const std::exception &e) {
            mark_failed(spec.name + " (best_semi search, total_antennas " + std::to_string(antennas) + ")",
                        e.what());
            throw;
        }
    }

    RunOutput execute_run(const ScenarioSpec &spec, const Scenario &scenario, const std::string &policy) {
        const std::string run_id = spec.name + "_m" + std::to_string(scenario.topology.total_antennas) +
                                   "_l" + std::to_string(scenario.topology.ap_count) + "_k" +
                                   std::to_string(scenario.topology.ue_count) + "_" +
                                   std::string(precoder_name(scenario.precoder));
        SEReport report;
        try {
            report = run_monte_carlo(scenario, options_.threads);
        } catch (const std::exception &e) {
            mark_failed(run_id, e.what());
            throw;
        }

        RunOutput output;
        output.run_id = run_id;
        output.topology = scenario.topology;
        output.precoder = scenario.precoder;
        output.summary = report.summary;
        output.samples_path = options_.output_dir / (run_id + "_samples" + table_extension());
        output.cdf_path = options_.output_dir / (run_id + "_cdf" + table_extension());
        output.summary_path = options_.output_dir / (run_id + "_summary.json");

        write_file(output.samples_path,
                   options_.format == OutputFormat::csv ? samples_csv(report) : samples_json(report));
        const std::vector<CdfPoint> cdf = downsample_cdf(report.cdf);
        write_file(output.cdf_path, options_.format == OutputFormat::csv ? cdf_csv(cdf) : cdf_json(cdf));
        json summary = summary_json(run_id, spec, report);
        if (!policy.empty())
            summary["scenario"]["ap_count_policy"] = policy;
        write_file(output.summary_path, summary.dump(2) + "\n");

        bundle_.runs.push_back(output);
        return output;
    }

    void mark_failed(const std::string &run_id, const std::string &message) {
        json marker = {{"schema_version", 1}, {"failed_run", run_id}, {"message", message}};
        try {
            write_file(options_.output_dir / "FAILED.json", marker.dump(2) + "\n");
        } catch (...) {
            // the original error is more useful than a marker write failure
        }
    }

    const RunConfig &config_;
    const CampaignOptions &options_;
    RoomGeometry geometry_;
    std::shared_ptr<const MeasuredTensor> tensor_cache_;
    OutputBundle bundle_;
};

} // namespace

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

OutputBundle run_campaign(const RunConfig &config, const CampaignOptions &options) {
    if (options.threads < 1)
        throw std::invalid_argument("campaign: threads must be at least 1");
    CampaignWriter writer(config, options);
    return writer.execute();
}

} // namespace mimosim
