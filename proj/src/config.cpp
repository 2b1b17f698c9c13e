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

#include "mimosim/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

namespace mimosim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string &field, const std::string &why) {
    throw ConfigError(field + ": " + why);
}

void check_keys(const json &object, const std::string &context, std::initializer_list<const char *> allowed) {
    for (const auto &item : object.items()) {
        bool known = false;
        for (const char *key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known)
            fail(context, "unknown key '" + item.key() + "'");
    }
}

const json *find(const json &object, const char *key) {
    const auto it = object.find(key);
    return it == object.end() ? nullptr : &*it;
}

double get_double(const json &object, const std::string &context, const char *key, double fallback) {
    const json *field = find(object, key);
    if (!field)
        return fallback;
    if (!field->is_number())
        fail(context + "." + key, "must be a number");
    return field->get<double>();
}

int get_int(const json &object, const std::string &context, const char *key, int fallback) {
    const json *field = find(object, key);
    if (!field)
        return fallback;
    if (!field->is_number_integer())
        fail(context + "." + key, "must be an integer");
    return field->get<int>();
}

bool get_bool(const json &object, const std::string &context, const char *key, bool fallback) {
    const json *field = find(object, key);
    if (!field)
        return fallback;
    if (!field->is_boolean())
        fail(context + "." + key, "must be a boolean");
    return field->get<bool>();
}

std::vector<int> get_int_list(const json &array, const std::string &context) {
    if (!array.is_array() || array.empty())
        fail(context, "must be a non-empty array of integers");
    std::vector<int> values;
    values.reserve(array.size());
    for (const auto &v : array) {
        if (!v.is_number_integer())
            fail(context, "must contain only integers");
        values.push_back(v.get<int>());
    }
    return values;
}

Topology parse_topology_triple(const json &value, const std::string &context) {
    if (!value.is_array() || value.size() != 3)
        fail(context, "must be an array [total_antennas, ap_count, ue_count]");
    for (const auto &v : value)
        if (!v.is_number_integer())
            fail(context, "must contain only integers");
    try {
        return make_topology(value[0].get<int>(), value[1].get<int>(), value[2].get<int>());
    } catch (const std::invalid_argument &e) {
        fail(context, e.what());
    }
}

GeometryConfig parse_geometry(const json &object) {
    GeometryConfig geometry;
    check_keys(object, "geometry", {"room_side_m", "ap_ring_count", "ap_spacing_m", "ue_area_side_m"});
    geometry.room_side_m = get_double(object, "geometry", "room_side_m", geometry.room_side_m);
    geometry.ap_ring_count = get_int(object, "geometry", "ap_ring_count", geometry.ap_ring_count);
    geometry.ap_spacing_m = get_double(object, "geometry", "ap_spacing_m", geometry.ap_spacing_m);
    geometry.ue_area_side_m = get_double(object, "geometry", "ue_area_side_m", geometry.ue_area_side_m);
    return geometry;
}

FadingParams parse_fading(const json &object) {
    FadingParams fading;
    check_keys(object, "fading",
               {"carrier_frequency_hz", "shadow_sigma_db", "min_distance_m", "height_offset_m"});
    fading.carrier_frequency_hz = get_double(object, "fading", "carrier_frequency_hz", fading.carrier_frequency_hz);
    fading.shadow_sigma_db = get_double(object, "fading", "shadow_sigma_db", fading.shadow_sigma_db);
    fading.min_distance_m = get_double(object, "fading", "min_distance_m", fading.min_distance_m);
    fading.height_offset_m = get_double(object, "fading", "height_offset_m", fading.height_offset_m);
    if (!(fading.carrier_frequency_hz > 0.0))
        fail("fading.carrier_frequency_hz", "must be positive");
    if (fading.shadow_sigma_db < 0.0)
        fail("fading.shadow_sigma_db", "must be non-negative");
    if (!(fading.min_distance_m > 0.0))
        fail("fading.min_distance_m", "must be positive");
    if (fading.height_offset_m < 0.0)
        fail("fading.height_offset_m", "must be non-negative");
    return fading;
}

PowerDefaults parse_power(const json &object) {
    PowerDefaults power;
    check_keys(object, "power", {"synthetic_tx_to_noise_db", "measured_tx_to_noise_db"});
    power.synthetic_tx_to_noise_db =
        get_double(object, "power", "synthetic_tx_to_noise_db", power.synthetic_tx_to_noise_db);
    power.measured_tx_to_noise_db =
        get_double(object, "power", "measured_tx_to_noise_db", power.measured_tx_to_noise_db);
    return power;
}

std::vector<PrecoderKind> parse_precoders(const json &entry, const std::string &context) {
    const json *single = find(entry, "precoder");
    const json *multiple = find(entry, "precoders");
    if (single && multiple)
        fail(context, "give either 'precoder' or 'precoders', not both");
    std::vector<std::string> names;
    if (single) {
        if (!single->is_string())
            fail(context + ".precoder", "must be a string");
        names.push_back(single->get<std::string>());
    } else if (multiple) {
        if (!multiple->is_array() || multiple->empty())
            fail(context + ".precoders", "must be a non-empty array");
        for (const auto &v : *multiple) {
            if (!v.is_string())
                fail(context + ".precoders", "must contain only strings");
            names.push_back(v.get<std::string>());
        }
    } else {
        fail(context, "missing 'precoder' or 'precoders'");
    }
    std::vector<PrecoderKind> kinds;
    kinds.reserve(names.size());
    for (const auto &name : names) {
        try {
            kinds.push_back(precoder_from_name(name));
        } catch (const std::invalid_argument &e) {
            fail(context, e.what());
        }
    }
    return kinds;
}

void require_semi_candidate(int total_antennas, const std::string &context) {
    for (int l = 2; l < total_antennas; ++l)
        if (total_antennas % l == 0)
            return;
    fail(context, "best_semi policy needs a divisor strictly between 1 and " + std::to_string(total_antennas));
}

AntennaSweep parse_antenna_sweep(const json &object, const std::string &context) {
    check_keys(object, context, {"m_values", "ue_count", "l_policy"});
    AntennaSweep sweep;
    const json *values = find(object, "m_values");
    if (!values)
        fail(context, "missing 'm_values'");
    sweep.antenna_counts = get_int_list(*values, context + ".m_values");
    sweep.ue_count = get_int(object, context, "ue_count", sweep.ue_count);
    if (sweep.ue_count < 1)
        fail(context + ".ue_count", "must be positive");

    const json *policy = find(object, "l_policy");
    if (!policy)
        fail(context, "missing 'l_policy'");
    if (policy->is_number_integer()) {
        sweep.policy = ApCountPolicy::explicit_count;
        sweep.explicit_ap_count = policy->get<int>();
    } else if (policy->is_string()) {
        const std::string name = policy->get<std::string>();
        if (name == "colocated")
            sweep.policy = ApCountPolicy::colocated;
        else if (name == "fully")
            sweep.policy = ApCountPolicy::fully;
        else if (name == "best_semi")
            sweep.policy = ApCountPolicy::best_semi;
        else
            fail(context + ".l_policy", "must be colocated, fully, best_semi, or an integer AP count");
    } else {
        fail(context + ".l_policy", "must be colocated, fully, best_semi, or an integer AP count");
    }

    for (int antennas : sweep.antenna_counts) {
        const std::string point = context + ".m_values (" + std::to_string(antennas) + ")";
        switch (sweep.policy) {
        case ApCountPolicy::colocated:
            parse_topology_triple(json::array({antennas, 1, sweep.ue_count}), point);
            break;
        case ApCountPolicy::fully:
            parse_topology_triple(json::array({antennas, antennas, sweep.ue_count}), point);
            break;
        case ApCountPolicy::best_semi:
            require_semi_candidate(antennas, point);
            break;
        case ApCountPolicy::explicit_count:
            parse_topology_triple(json::array({antennas, sweep.explicit_ap_count, sweep.ue_count}), point);
            break;
        }
    }
    return sweep;
}

ApSweep parse_ap_sweep(const json &object, const std::string &context) {
    check_keys(object, context, {"total_antennas", "l_values", "ue_count"});
    ApSweep sweep;
    sweep.total_antennas = get_int(object, context, "total_antennas", 0);
    if (sweep.total_antennas < 1)
        fail(context, "missing or non-positive 'total_antennas'");
    const json *values = find(object, "l_values");
    if (!values)
        fail(context, "missing 'l_values'");
    sweep.ap_counts = get_int_list(*values, context + ".l_values");
    sweep.ue_count = get_int(object, context, "ue_count", sweep.ue_count);
    if (sweep.ue_count < 1)
        fail(context + ".ue_count", "must be positive");
    for (int ap_count : sweep.ap_counts)
        parse_topology_triple(json::array({sweep.total_antennas, ap_count, sweep.ue_count}), context + ".l_values");
    return sweep;
}

ScenarioSpec parse_scenario(const json &entry, std::size_t index, const std::filesystem::path &base_dir) {
    const std::string context = "campaign[" + std::to_string(index) + "]";
    if (!entry.is_object())
        fail(context, "must be an object");
    check_keys(entry, context,
               {"name", "source", "tensor_path", "precoder", "precoders", "realizations", "seed",
                "tx_to_noise_db", "zf_unit_power_columns", "topology", "topologies", "m_sweep", "l_sweep"});

    ScenarioSpec spec;
    if (const json *name = find(entry, "name")) {
        if (!name->is_string() || name->get<std::string>().empty())
            fail(context + ".name", "must be a non-empty string");
        spec.name = name->get<std::string>();
    } else {
        spec.name = "scenario" + std::to_string(index);
    }
    for (char c : spec.name)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
            fail(context + ".name", "may only contain letters, digits, '-' and '_'");

    const json *source = find(entry, "source");
    if (!source || !source->is_string())
        fail(context, "missing 'source' (synthetic or measured)");
    const std::string source_name = source->get<std::string>();
    if (source_name == "measured")
        spec.measured = true;
    else if (source_name != "synthetic")
        fail(context + ".source", "must be 'synthetic' or 'measured'");

    if (spec.measured) {
        const json *tensor_path = find(entry, "tensor_path");
        if (!tensor_path || !tensor_path->is_string())
            fail(context, "measured source needs 'tensor_path'");
        std::filesystem::path p = tensor_path->get<std::string>();
        if (p.is_relative())
            p = base_dir / p;
        if (!std::filesystem::exists(p))
            fail(context + ".tensor_path", "file does not exist: " + p.string());
        spec.tensor_path = p;
    } else if (find(entry, "tensor_path")) {
        fail(context + ".tensor_path", "only valid for measured sources");
    }

    spec.precoders = parse_precoders(entry, context);
    spec.realizations = get_int(entry, context, "realizations", spec.realizations);
    if (spec.realizations < 1)
        fail(context + ".realizations", "must be at least 1");

    const json *seed = find(entry, "seed");
    if (!seed)
        fail(context, "missing 'seed' (seeds are explicit, no clock defaults)");
    if (!seed->is_number_unsigned() && !(seed->is_number_integer() && seed->get<std::int64_t>() >= 0))
        fail(context + ".seed", "must be a non-negative integer");
    spec.seed = seed->get<std::uint64_t>();

    if (const json *ratio = find(entry, "tx_to_noise_db")) {
        if (!ratio->is_number())
            fail(context + ".tx_to_noise_db", "must be a number");
        spec.tx_to_noise_db = ratio->get<double>();
    }
    spec.zf_unit_power_columns = get_bool(entry, context, "zf_unit_power_columns", false);

    const json *topology = find(entry, "topology");
    const json *topologies = find(entry, "topologies");
    const json *antenna_sweep = find(entry, "m_sweep");
    const json *ap_sweep = find(entry, "l_sweep");
    const int selectors = (topology != nullptr) + (topologies != nullptr) + (antenna_sweep != nullptr) +
                          (ap_sweep != nullptr);
    if (selectors != 1)
        fail(context, "give exactly one of 'topology', 'topologies', 'm_sweep', 'l_sweep'");

    if (topology) {
        spec.topologies.push_back(parse_topology_triple(*topology, context + ".topology"));
    } else if (topologies) {
        if (!topologies->is_array() || topologies->empty())
            fail(context + ".topologies", "must be a non-empty array of [M, L, K] triples");
        for (std::size_t i = 0; i < topologies->size(); ++i)
            spec.topologies.push_back(parse_topology_triple(
                (*topologies)[i], context + ".topologies[" + std::to_string(i) + "]"));
    } else if (antenna_sweep) {
        spec.antenna_sweep = parse_antenna_sweep(*antenna_sweep, context + ".m_sweep");
    } else {
        spec.ap_sweep = parse_ap_sweep(*ap_sweep, context + ".l_sweep");
    }

    // zero-forcing is infeasible with fewer antennas than UEs; reject early
    const bool wants_zf =
        std::find(spec.precoders.begin(), spec.precoders.end(), PrecoderKind::zf) != spec.precoders.end();
    if (wants_zf) {
        for (const Topology &t : spec.topologies)
            if (t.total_antennas < t.ue_count)
                fail(context, "zero-forcing needs total_antennas >= ue_count");
        if (spec.antenna_sweep)
            for (int antennas : spec.antenna_sweep->antenna_counts)
                if (antennas < spec.antenna_sweep->ue_count)
                    fail(context + ".m_sweep", "zero-forcing needs total_antennas >= ue_count");
        if (spec.ap_sweep && spec.ap_sweep->total_antennas < spec.ap_sweep->ue_count)
            fail(context + ".l_sweep", "zero-forcing needs total_antennas >= ue_count");
    }
    return spec;
}

} // namespace

RoomGeometry build_geometry(const GeometryConfig &geometry) {
    try {
        return build_ap_ring(geometry.room_side_m, geometry.ap_ring_count, geometry.ap_spacing_m,
                             geometry.ue_area_side_m);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("geometry: ") + e.what());
    }
}

RunConfig parse_config_text(const std::string &text, const std::filesystem::path &base_dir) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object())
        fail("config", "top level must be an object");
    check_keys(root, "config", {"schema_version", "geometry", "fading", "power", "campaign"});

    if (const json *version = find(root, "schema_version")) {
        if (!version->is_number_integer() || version->get<int>() != 1)
            fail("schema_version", "must be 1");
    }

    RunConfig config;
    if (const json *geometry = find(root, "geometry")) {
        if (!geometry->is_object())
            fail("geometry", "must be an object");
        config.geometry = parse_geometry(*geometry);
    }
    if (const json *fading = find(root, "fading")) {
        if (!fading->is_object())
            fail("fading", "must be an object");
        config.fading = parse_fading(*fading);
    }
    if (const json *power = find(root, "power")) {
        if (!power->is_object())
            fail("power", "must be an object");
        config.power = parse_power(*power);
    }

    build_geometry(config.geometry); // validates ring closure

    const json *campaign = find(root, "campaign");
    if (!campaign || !campaign->is_array() || campaign->empty())
        fail("campaign", "must be a non-empty array of scenario entries");
    std::unordered_set<std::string> names;
    for (std::size_t i = 0; i < campaign->size(); ++i) {
        ScenarioSpec spec = parse_scenario((*campaign)[i], i, base_dir);
        if (!names.insert(spec.name).second)
            fail("campaign[" + std::to_string(i) + "].name", "duplicate name '" + spec.name + "'");
        config.campaign.push_back(std::move(spec));
    }

    // synthetic scenarios must fit the configured ring
    const int ring_size = config.geometry.ap_ring_count;
    for (std::size_t i = 0; i < config.campaign.size(); ++i) {
        const ScenarioSpec &spec = config.campaign[i];
        if (spec.measured)
            continue;
        auto check_ring = [&](int ap_count) {
            if (ap_count > ring_size)
                fail("campaign[" + std::to_string(i) + "]",
                     "ap_count " + std::to_string(ap_count) + " exceeds geometry ring size " +
                         std::to_string(ring_size));
        };
        for (const Topology &t : spec.topologies)
            check_ring(t.ap_count);
        if (spec.antenna_sweep)
            for (int antennas : spec.antenna_sweep->antenna_counts) {
                int required = 1;
                switch (spec.antenna_sweep->policy) {
                case ApCountPolicy::colocated:
                    required = 1;
                    break;
                case ApCountPolicy::fully:
                    required = antennas;
                    break;
                case ApCountPolicy::explicit_count:
                    required = spec.antenna_sweep->explicit_ap_count;
                    break;
                case ApCountPolicy::best_semi:
                    for (int l = antennas / 2; l > 1; --l)
                        if (antennas % l == 0) {
                            required = l;
                            break;
                        }
                    break;
                }
                check_ring(required);
            }
        if (spec.ap_sweep)
            for (int ap_count : spec.ap_sweep->ap_counts)
                check_ring(ap_count);
    }
    return config;
}

RunConfig parse_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw ConfigError("read failure on " + path.string());
    return parse_config_text(text, path.has_parent_path() ? path.parent_path() : std::filesystem::path("."));
}

} // namespace mimosim
