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

#ifndef MIMOSIM_EVALUATOR_HPP
#define MIMOSIM_EVALUATOR_HPP

#include <memory>
#include <optional>
#include <span>
#include <variant>

#include "mimosim/measured.hpp"
#include "mimosim/precoder.hpp"

namespace mimosim {

// Ratio of expected per-UE transmit power to received noise power,
// identical for every UE.
struct PowerConfig {
    double tx_to_noise_ratio_db = 75.0;
};

// Received SINR at one UE: |G(:,k)^T H(:,k)|^2 rho over the sum of
// |G(:,k')^T H(:,k)|^2 rho for k' != k plus 1, with
// rho = 10^(tx_to_noise_ratio_db / 10).
double sinr(const ChannelMatrix &channel, const PrecodingMatrix &precoder, int ue_index,
            const PowerConfig &power);

// Achievable downlink rate log2(1 + sinr) in bits/s/Hz.
double spectral_efficiency(double sinr_value);

struct SyntheticSource {
    RoomGeometry geometry;
    FadingParams fading;
};

struct MeasuredSource {
    std::shared_ptr<const MeasuredTensor> tensor;
};

using ChannelSource = std::variant<SyntheticSource, MeasuredSource>;

struct Scenario {
    Topology topology;
    ChannelSource source;
    PrecoderKind precoder = PrecoderKind::zf;
    PowerConfig power;
    int realizations = 10000;
    std::uint64_t master_seed = 0;
    bool zf_unit_power_columns = false;
};

std::string_view channel_source_name(const ChannelSource &source);

struct CdfPoint {
    double value = 0.0;
    double probability = 0.0;
};

struct ScenarioSummary {
    double median = 0.0;
    double likely_95 = 0.0;
    double mean = 0.0;
    // extremes of the realized per-UE precoder column power |G(:,k)|^2
    double precoder_column_power_min = 0.0;
    double precoder_column_power_max = 0.0;
};

struct SEReport {
    Scenario scenario;
    std::vector<double> samples; // realizations * ue_count values, realization-major
    std::vector<CdfPoint> cdf;   // full-resolution empirical CDF
    ScenarioSummary summary;
};

// Sorted sample values with cumulative probability i/N for the i-th order
// statistic.
std::vector<CdfPoint> empirical_cdf(std::span<const double> samples);

// Lower empirical quantile: order statistic at rank ceil(q * N), 1-based.
double lower_quantile(std::span<const double> samples, double q);

// 95%-likely value, the order statistic at rank ceil(0.05 * N). Needs at
// least 20 samples.
double likely_95(std::span<const double> samples);

class EvaluationError : public std::runtime_error {
  public:
    EvaluationError(int realization_index, const std::string &message)
        : std::runtime_error("realization " + std::to_string(realization_index) + ": " + message),
          realization_index_(realization_index) {}

    int realization_index() const { return realization_index_; }

  private:
    int realization_index_;
};

// Runs the full campaign for one scenario: per realization s, substreams
// derived from (master_seed, s) drive placement/plan and channel draws,
// the precoder is built, and each UE's spectral efficiency is recorded.
// Results are bit-identical for identical scenarios regardless of the
// thread count. A precoder singularity aborts with the offending
// realization index; nothing is resampled.
SEReport run_monte_carlo(const Scenario &scenario, int threads = 1);

struct BestSemiResult {
    int ap_count = 0;
    double likely_95 = 0.0;
};

// Seed used for each candidate AP count in the semi-distributed search;
// also the seed of the winning scenario.
std::uint64_t topology_search_seed(std::uint64_t master_seed, int ap_count);

// Evaluates likely_95 for every divisor L of total_antennas with
// 1 < L < total_antennas (each with its own derived seed) and returns the
// maximizer; ties break toward the smaller AP count.
BestSemiResult best_semi_distributed_ap_count(int total_antennas, int ue_count, const Scenario &base,
                                              int threads = 1);

} // namespace mimosim

#endif
