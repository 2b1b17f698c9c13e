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

#include "mimosim/evaluator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

namespace mimosim {

double sinr(const ChannelMatrix &channel, const PrecodingMatrix &precoder, int ue_index,
            const PowerConfig &power) {
    const ComplexMatrix &h = channel.entries;
    const ComplexMatrix &g = precoder.entries;
    if (g.rows() != h.rows() || g.cols() != h.cols())
        throw std::invalid_argument("sinr: precoder dimensions do not match the channel");
    if (ue_index < 0 || ue_index >= h.cols())
        throw std::invalid_argument("sinr: ue_index out of range");
    if (!std::isfinite(power.tx_to_noise_ratio_db))
        throw std::invalid_argument("sinr: tx_to_noise_ratio_db must be finite");

    const double rho = std::pow(10.0, power.tx_to_noise_ratio_db / 10.0);
    const double signal = std::norm(column_product(g, ue_index, h, ue_index)) * rho;
    double interference = 0.0;
    for (int other = 0; other < h.cols(); ++other) {
        if (other == ue_index)
            continue;
        interference += std::norm(column_product(g, other, h, ue_index)) * rho;
    }
    return signal / (interference + 1.0);
}

double spectral_efficiency(double sinr_value) {
    if (!(sinr_value >= 0.0))
        throw std::invalid_argument("spectral_efficiency: SINR must be non-negative");
    return std::log2(1.0 + sinr_value);
}

std::string_view channel_source_name(const ChannelSource &source) {
    return std::holds_alternative<SyntheticSource>(source) ? "synthetic" : "measured";
}

std::vector<CdfPoint> empirical_cdf(std::span<const double> samples) {
    if (samples.empty())
        throw std::invalid_argument("empirical_cdf: no samples");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<CdfPoint> cdf(sorted.size());
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        cdf[i] = {sorted[i], static_cast<double>(i + 1) / n};
    return cdf;
}

namespace {

double order_statistic(const std::vector<double> &sorted, double q) {
    const std::size_t n = sorted.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    rank = std::clamp<std::size_t>(rank, 1, n);
    return sorted[rank - 1];
}

} // namespace

double lower_quantile(std::span<const double> samples, double q) {
    if (samples.empty())
        throw std::invalid_argument("lower_quantile: no samples");
    if (!(q > 0.0) || q > 1.0)
        throw std::invalid_argument("lower_quantile: q must lie in (0, 1]");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    return order_statistic(sorted, q);
}

double likely_95(std::span<const double> samples) {
    if (samples.size() < 20)
        throw std::invalid_argument("likely_95: needs at least 20 samples, got " +
                                    std::to_string(samples.size()));
    return lower_quantile(samples, 0.05);
}

namespace {

void validate_scenario(const Scenario &scenario) {
    make_topology(scenario.topology.total_antennas, scenario.topology.ap_count, scenario.topology.ue_count);
    if (scenario.realizations < 1)
        throw std::invalid_argument("scenario: realizations must be at least 1");
    if (scenario.precoder == PrecoderKind::zf &&
        scenario.topology.total_antennas < scenario.topology.ue_count)
        throw std::invalid_argument("scenario: zero-forcing needs total_antennas >= ue_count");
    if (const auto *synthetic = std::get_if<SyntheticSource>(&scenario.source)) {
        if (scenario.topology.ap_count > static_cast<int>(synthetic->geometry.ap_ring.size()))
            throw std::invalid_argument("scenario: ap_count exceeds the geometry ring size");
    } else {
        const auto &measured = std::get<MeasuredSource>(scenario.source);
        if (!measured.tensor)
            throw std::invalid_argument("scenario: measured source has no tensor");
        // surfaces capacity violations before any realization runs
        RandomStream probe(scenario.master_seed, 0, StreamPurpose::subsample_plan);
        make_subsample_plan(*measured.tensor, scenario.topology, probe);
    }
}

ChannelMatrix draw_channel(const Scenario &scenario, int realization) {
    const auto s = static_cast<std::uint64_t>(realization);
    if (const auto *synthetic = std::get_if<SyntheticSource>(&scenario.source)) {
        RandomStream placement_rng(scenario.master_seed, s, StreamPurpose::placement);
        RandomStream shadowing_rng(scenario.master_seed, s, StreamPurpose::shadowing);
        RandomStream small_scale_rng(scenario.master_seed, s, StreamPurpose::small_scale);
        const Placement placement = sample_placement(synthetic->geometry, scenario.topology, placement_rng);
        const LargeScaleFading beta = draw_large_scale_fading(placement, synthetic->fading, shadowing_rng);
        return generate_synthetic_channel(scenario.topology, beta, small_scale_rng, realization);
    }
    const auto &measured = std::get<MeasuredSource>(scenario.source);
    RandomStream plan_rng(scenario.master_seed, s, StreamPurpose::subsample_plan);
    const SubsamplePlan plan = make_subsample_plan(*measured.tensor, scenario.topology, plan_rng);
    return subsample_measured(*measured.tensor, plan, realization);
}

struct RealizationFailure {
    int realization = 0;
    std::string message;
};

} // namespace

SEReport run_monte_carlo(const Scenario &scenario, int threads) {
    validate_scenario(scenario);

    const int realizations = scenario.realizations;
    const int ues = scenario.topology.ue_count;
    std::vector<double> samples(static_cast<std::size_t>(realizations) * static_cast<std::size_t>(ues));
    std::vector<double> power_min(static_cast<std::size_t>(realizations));
    std::vector<double> power_max(static_cast<std::size_t>(realizations));

    std::mutex failure_mutex;
    std::vector<RealizationFailure> failures;

    auto evaluate = [&](int s) {
        try {
            const ChannelMatrix channel = draw_channel(scenario, s);
            const NormalizedChannelMatrix normalized = normalize_columns(channel);
            const PrecodingMatrix precoder =
                scenario.precoder == PrecoderKind::zf
                    ? zf_precoder(normalized, 1e12, scenario.zf_unit_power_columns)
                    : mrt_precoder(normalized);
            double lo = std::numeric_limits<double>::infinity();
            double hi = -std::numeric_limits<double>::infinity();
            for (int k = 0; k < ues; ++k) {
                samples[static_cast<std::size_t>(s - 1) * static_cast<std::size_t>(ues) +
                        static_cast<std::size_t>(k)] =
                    spectral_efficiency(sinr(channel, precoder, k, scenario.power));
                const double column_power = std::pow(column_norm(precoder.entries, k), 2);
                lo = std::min(lo, column_power);
                hi = std::max(hi, column_power);
            }
            power_min[static_cast<std::size_t>(s - 1)] = lo;
            power_max[static_cast<std::size_t>(s - 1)] = hi;
        } catch (const std::exception &e) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            failures.push_back({s, e.what()});
        }
    };

    const int worker_count = std::clamp(threads, 1, realizations);
    if (worker_count <= 1) {
        for (int s = 1; s <= realizations; ++s)
            evaluate(s);
    } else {
        std::atomic<int> next{1};
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(worker_count));
        for (int t = 0; t < worker_count; ++t)
            workers.emplace_back([&] {
                for (int s = next.fetch_add(1); s <= realizations; s = next.fetch_add(1))
                    evaluate(s);
            });
        for (auto &worker : workers)
            worker.join();
    }

    if (!failures.empty()) {
        // every realization ran, so the earliest failure is deterministic
        const auto earliest = std::min_element(failures.begin(), failures.end(),
                                               [](const RealizationFailure &a, const RealizationFailure &b) {
                                                   return a.realization < b.realization;
                                               });
        throw EvaluationError(earliest->realization, earliest->message);
    }

    SEReport report;
    report.scenario = scenario;
    report.cdf = empirical_cdf(samples);
    report.samples = std::move(samples);

    std::vector<double> sorted(report.cdf.size());
    for (std::size_t i = 0; i < report.cdf.size(); ++i)
        sorted[i] = report.cdf[i].value;
    report.summary.median = order_statistic(sorted, 0.5);
    report.summary.likely_95 = order_statistic(sorted, 0.05);
    report.summary.mean =
        std::accumulate(report.samples.begin(), report.samples.end(), 0.0) /
        static_cast<double>(report.samples.size());
    report.summary.precoder_column_power_min = *std::min_element(power_min.begin(), power_min.end());
    report.summary.precoder_column_power_max = *std::max_element(power_max.begin(), power_max.end());
    return report;
}

std::uint64_t topology_search_seed(std::uint64_t master_seed, int ap_count) {
    return RandomStream(master_seed, static_cast<std::uint64_t>(ap_count), StreamPurpose::topology_search)
        .next_u64();
}

BestSemiResult best_semi_distributed_ap_count(int total_antennas, int ue_count, const Scenario &base,
                                              int threads) {
    std::vector<int> candidates;
    for (int l = 2; l < total_antennas; ++l)
        if (total_antennas % l == 0)
            candidates.push_back(l);
    if (candidates.empty())
        throw std::invalid_argument("best_semi_distributed_ap_count: no AP count strictly between 1 and " +
                                    std::to_string(total_antennas) + " divides it");

    std::optional<BestSemiResult> best;
    for (int ap_count : candidates) {
        Scenario candidate = base;
        candidate.topology = make_topology(total_antennas, ap_count, ue_count);
        candidate.master_seed = topology_search_seed(base.master_seed, ap_count);
        const SEReport report = run_monte_carlo(candidate, threads);
        if (!best || report.summary.likely_95 > best->likely_95)
            best = BestSemiResult{ap_count, report.summary.likely_95};
    }
    return *best;
}

} // namespace mimosim
