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

#include "mimosim/measured.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mimosim {

namespace {

constexpr char k_magic[4] = {'M', 'C', 'H', 'T'};
constexpr std::uint32_t k_version = 1;
constexpr std::size_t k_header_bytes = 4 + 6 * 4 + 2 * 8;
constexpr std::size_t k_max_elements = std::size_t{1} << 28; // 4 GiB of payload

void append_u32(std::string &out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void append_f64(std::string &out, double d) {
    const auto v = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Reader {
  public:
    Reader(const unsigned char *data, std::size_t size) : data_(data), size_(size) {}

    std::uint32_t u32() {
        require(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(data_[pos_ + static_cast<std::size_t>(i)]) << (8 * i);
        pos_ += 4;
        return v;
    }

    double f64() {
        require(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(data_[pos_ + static_cast<std::size_t>(i)]) << (8 * i);
        pos_ += 8;
        return std::bit_cast<double>(v);
    }

    void raw(char *dst, std::size_t n) {
        require(n);
        std::memcpy(dst, data_ + pos_, n);
        pos_ += n;
    }

    std::size_t remaining() const { return size_ - pos_; }

  private:
    void require(std::size_t n) const {
        if (size_ - pos_ < n)
            throw std::runtime_error("measured tensor: truncated file");
    }

    const unsigned char *data_;
    std::size_t size_;
    std::size_t pos_ = 0;
};

void validate_dims(const TensorDims &dims) {
    if (dims.freq_points == 0 || dims.bs_ports == 0 || dims.ue_ports == 0)
        throw std::invalid_argument("measured tensor: dimensions must be positive");
    if (dims.bs_ports_per_location == 0 || dims.bs_ports % dims.bs_ports_per_location != 0)
        throw std::invalid_argument("measured tensor: bs_ports_per_location " +
                                    std::to_string(dims.bs_ports_per_location) + " does not divide bs_ports " +
                                    std::to_string(dims.bs_ports));
    if (dims.ue_ports_per_location == 0 || dims.ue_ports % dims.ue_ports_per_location != 0)
        throw std::invalid_argument("measured tensor: ue_ports_per_location " +
                                    std::to_string(dims.ue_ports_per_location) + " does not divide ue_ports " +
                                    std::to_string(dims.ue_ports));
    const std::size_t elements = static_cast<std::size_t>(dims.freq_points) *
                                 static_cast<std::size_t>(dims.bs_ports) *
                                 static_cast<std::size_t>(dims.ue_ports);
    if (elements > k_max_elements)
        throw std::invalid_argument("measured tensor: dimensions too large");
    if (!(dims.frequency_spacing_hz >= 0.0) || !(dims.frequency_start_hz > 0.0))
        throw std::invalid_argument("measured tensor: invalid frequency grid");
}

} // namespace

MeasuredTensor::MeasuredTensor(TensorDims dims, std::vector<Complex> values)
    : dims_(dims), values_(std::move(values)) {
    validate_dims(dims_);
    const std::size_t expected = static_cast<std::size_t>(dims_.freq_points) *
                                 static_cast<std::size_t>(dims_.bs_ports) *
                                 static_cast<std::size_t>(dims_.ue_ports);
    if (values_.size() != expected)
        throw std::invalid_argument("measured tensor: value count " + std::to_string(values_.size()) +
                                    " does not match dimensions (expected " + std::to_string(expected) + ")");
    for (const auto &v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("measured tensor: non-finite sample");
}

MeasuredTensor load_measured_tensor(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("measured tensor: cannot open " + path.string());
    std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw std::runtime_error("measured tensor: read failure on " + path.string());

    if (blob.size() < k_header_bytes)
        throw std::runtime_error("measured tensor: truncated file " + path.string());
    Reader reader(reinterpret_cast<const unsigned char *>(blob.data()), blob.size());

    char magic[4];
    reader.raw(magic, 4);
    if (std::memcmp(magic, k_magic, 4) != 0)
        throw std::runtime_error("measured tensor: bad magic in " + path.string());
    const std::uint32_t version = reader.u32();
    if (version != k_version)
        throw std::runtime_error("measured tensor: unsupported version " + std::to_string(version) +
                                 " in " + path.string());

    TensorDims dims;
    dims.freq_points = reader.u32();
    dims.bs_ports = reader.u32();
    dims.ue_ports = reader.u32();
    dims.bs_ports_per_location = reader.u32();
    dims.ue_ports_per_location = reader.u32();
    dims.frequency_start_hz = reader.f64();
    dims.frequency_spacing_hz = reader.f64();

    try {
        validate_dims(dims);
    } catch (const std::invalid_argument &e) {
        throw std::runtime_error(std::string(e.what()) + " in " + path.string());
    }

    const std::size_t elements = static_cast<std::size_t>(dims.freq_points) *
                                 static_cast<std::size_t>(dims.bs_ports) *
                                 static_cast<std::size_t>(dims.ue_ports);
    if (reader.remaining() != elements * 16)
        throw std::runtime_error("measured tensor: truncated file " + path.string() + " (payload is " +
                                 std::to_string(reader.remaining()) + " bytes, expected " +
                                 std::to_string(elements * 16) + ")");

    std::vector<Complex> values;
    values.reserve(elements);
    for (std::size_t i = 0; i < elements; ++i) {
        const double re = reader.f64();
        const double im = reader.f64();
        values.emplace_back(re, im);
    }

    try {
        return MeasuredTensor(dims, std::move(values));
    } catch (const std::invalid_argument &e) {
        throw std::runtime_error(std::string(e.what()) + " in " + path.string());
    }
}

void write_measured_tensor(const MeasuredTensor &tensor, const std::filesystem::path &path) {
    const TensorDims &dims = tensor.dims();
    std::string blob;
    blob.reserve(k_header_bytes + tensor.values().size() * 16);
    blob.append(k_magic, 4);
    append_u32(blob, k_version);
    append_u32(blob, dims.freq_points);
    append_u32(blob, dims.bs_ports);
    append_u32(blob, dims.ue_ports);
    append_u32(blob, dims.bs_ports_per_location);
    append_u32(blob, dims.ue_ports_per_location);
    append_f64(blob, dims.frequency_start_hz);
    append_f64(blob, dims.frequency_spacing_hz);
    for (const auto &v : tensor.values()) {
        append_f64(blob, v.real());
        append_f64(blob, v.imag());
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("measured tensor: cannot write " + path.string());
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
    if (!out)
        throw std::runtime_error("measured tensor: write failure on " + path.string());
}

MeasuredTensor make_fixture_tensor(const TensorDims &dims, std::uint64_t seed) {
    validate_dims(dims);
    const std::size_t elements = static_cast<std::size_t>(dims.freq_points) *
                                 static_cast<std::size_t>(dims.bs_ports) *
                                 static_cast<std::size_t>(dims.ue_ports);
    RandomStream rng(seed, 0, StreamPurpose::fixture_fill);
    std::vector<Complex> values;
    values.reserve(elements);
    const double scale = 1.0 / std::numbers::sqrt2;
    for (std::size_t i = 0; i < elements; ++i) {
        const auto [re, im] = rng.normal_pair();
        values.emplace_back(re * scale, im * scale);
    }
    return MeasuredTensor(dims, std::move(values));
}

void emit_fixture_tensor(const TensorDims &dims, std::uint64_t seed, const std::filesystem::path &path) {
    write_measured_tensor(make_fixture_tensor(dims, seed), path);
}

SubsamplePlan make_subsample_plan(const MeasuredTensor &tensor, const Topology &topology, RandomStream &rng) {
    const TensorDims &dims = tensor.dims();
    const int bs_locations = tensor.bs_location_count();
    const int ue_locations = tensor.ue_location_count();
    const int per_ap = antennas_per_ap(topology);

    if (topology.ap_count > bs_locations)
        throw std::invalid_argument("subsample: ap_count " + std::to_string(topology.ap_count) +
                                    " exceeds tensor BS locations " + std::to_string(bs_locations));
    if (per_ap > static_cast<int>(dims.bs_ports_per_location))
        throw std::invalid_argument("subsample: " + std::to_string(per_ap) +
                                    " antennas per AP exceed ports per location " +
                                    std::to_string(dims.bs_ports_per_location));
    if (topology.ue_count > ue_locations)
        throw std::invalid_argument("subsample: ue_count " + std::to_string(topology.ue_count) +
                                    " exceeds tensor UE locations " + std::to_string(ue_locations));

    SubsamplePlan plan;
    plan.frequency_index = static_cast<std::uint32_t>(rng.uniform_below(dims.freq_points));
    plan.bs_locations = rng.sample_without_replacement(bs_locations, topology.ap_count);
    plan.bs_ports.reserve(plan.bs_locations.size());
    for (std::size_t i = 0; i < plan.bs_locations.size(); ++i)
        plan.bs_ports.push_back(
            rng.sample_without_replacement(static_cast<int>(dims.bs_ports_per_location), per_ap));
    plan.ue_locations = rng.sample_without_replacement(ue_locations, topology.ue_count);
    plan.ue_ports.reserve(plan.ue_locations.size());
    for (std::size_t i = 0; i < plan.ue_locations.size(); ++i)
        plan.ue_ports.push_back(static_cast<int>(rng.uniform_below(dims.ue_ports_per_location)));
    return plan;
}

ChannelMatrix subsample_measured(const MeasuredTensor &tensor, const SubsamplePlan &plan,
                                 int realization_index) {
    const TensorDims &dims = tensor.dims();
    if (plan.frequency_index >= dims.freq_points)
        throw std::invalid_argument("subsample: frequency index out of range");
    if (plan.bs_locations.empty() || plan.ue_locations.empty())
        throw std::invalid_argument("subsample: plan selects no locations");
    if (plan.bs_ports.size() != plan.bs_locations.size() || plan.ue_ports.size() != plan.ue_locations.size())
        throw std::invalid_argument("subsample: plan port lists do not match location lists");

    const int ap_count = static_cast<int>(plan.bs_locations.size());
    const int per_ap = static_cast<int>(plan.bs_ports.front().size());
    const int ue_count = static_cast<int>(plan.ue_locations.size());

    auto check_distinct = [](const std::vector<int> &xs, int bound, const char *what) {
        std::vector<bool> seen(static_cast<std::size_t>(bound), false);
        for (int x : xs) {
            if (x < 0 || x >= bound)
                throw std::invalid_argument(std::string("subsample: ") + what + " index out of range");
            if (seen[static_cast<std::size_t>(x)])
                throw std::invalid_argument(std::string("subsample: duplicate ") + what + " index");
            seen[static_cast<std::size_t>(x)] = true;
        }
    };
    check_distinct(plan.bs_locations, tensor.bs_location_count(), "BS location");
    check_distinct(plan.ue_locations, tensor.ue_location_count(), "UE location");
    for (const auto &ports : plan.bs_ports) {
        if (static_cast<int>(ports.size()) != per_ap)
            throw std::invalid_argument("subsample: uneven port counts across APs");
        check_distinct(ports, static_cast<int>(dims.bs_ports_per_location), "BS port");
    }
    for (int port : plan.ue_ports)
        if (port < 0 || port >= static_cast<int>(dims.ue_ports_per_location))
            throw std::invalid_argument("subsample: UE port index out of range");

    const Topology topology = make_topology(ap_count * per_ap, ap_count, ue_count);
    ComplexMatrix entries(topology.total_antennas, topology.ue_count);
    for (int k = 0; k < ue_count; ++k) {
        const std::uint32_t ue_port = static_cast<std::uint32_t>(plan.ue_locations[static_cast<std::size_t>(k)]) *
                                          dims.ue_ports_per_location +
                                      static_cast<std::uint32_t>(plan.ue_ports[static_cast<std::size_t>(k)]);
        for (int l = 0; l < ap_count; ++l)
            for (int j = 0; j < per_ap; ++j) {
                const std::uint32_t bs_port =
                    static_cast<std::uint32_t>(plan.bs_locations[static_cast<std::size_t>(l)]) *
                        dims.bs_ports_per_location +
                    static_cast<std::uint32_t>(plan.bs_ports[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)]);
                entries(l * per_ap + j, k) = tensor.at(plan.frequency_index, bs_port, ue_port);
            }
    }
    return make_channel_matrix(std::move(entries), topology, realization_index);
}

} // namespace mimosim
