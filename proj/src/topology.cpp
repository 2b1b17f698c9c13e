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

#include "mimosim/topology.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mimosim {

Topology make_topology(int total_antennas, int ap_count, int ue_count) {
    if (total_antennas < 1)
        throw std::invalid_argument("topology: total_antennas must be positive");
    if (ap_count < 1)
        throw std::invalid_argument("topology: ap_count must be positive");
    if (ue_count < 1)
        throw std::invalid_argument("topology: ue_count must be positive");
    if (ap_count > total_antennas)
        throw std::invalid_argument("topology: ap_count " + std::to_string(ap_count) +
                                    " exceeds total_antennas " + std::to_string(total_antennas));
    if (total_antennas % ap_count != 0)
        throw std::invalid_argument("topology: ap_count " + std::to_string(ap_count) +
                                    " does not divide total_antennas " + std::to_string(total_antennas) +
                                    " (antennas per AP must be an integer)");
    return Topology{total_antennas, ap_count, ue_count};
}

TopologyClass classify(const Topology &t) {
    if (t.ap_count == 1)
        return TopologyClass::colocated;
    if (t.ap_count == t.total_antennas)
        return TopologyClass::fully_distributed;
    return TopologyClass::semi_distributed;
}

std::string_view topology_class_name(TopologyClass c) {
    switch (c) {
    case TopologyClass::colocated:
        return "co-located";
    case TopologyClass::fully_distributed:
        return "fully-distributed";
    case TopologyClass::semi_distributed:
    default:
        return "semi-distributed";
    }
}

RoomGeometry build_ap_ring(double side, int count, double spacing, double ue_area_side) {
    if (!(side > 0.0) || !(spacing > 0.0) || count < 1)
        throw std::invalid_argument("geometry: side, spacing and ring count must be positive");
    if (!(ue_area_side > 0.0) || ue_area_side > side)
        throw std::invalid_argument("geometry: ue_area_side must lie in (0, side]");

    const double perimeter = 4.0 * side;
    if (std::abs(static_cast<double>(count) * spacing - perimeter) > 1e-9)
        throw std::invalid_argument("geometry: ring does not close, count * spacing = " +
                                    std::to_string(count * spacing) + " m but perimeter = " +
                                    std::to_string(perimeter) + " m");

    RoomGeometry geometry;
    geometry.side = side;
    geometry.ue_area_side = ue_area_side;
    geometry.ap_ring.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        // arc parameter along the perimeter, counter-clockwise from (0,0)
        const double t = spacing * (static_cast<double>(i) + 0.5);
        Point2 p;
        if (t < side) {
            p = {t, 0.0};
        } else if (t < 2.0 * side) {
            p = {side, t - side};
        } else if (t < 3.0 * side) {
            p = {side - (t - 2.0 * side), side};
        } else {
            p = {0.0, side - (t - 3.0 * side)};
        }
        geometry.ap_ring.push_back(p);
    }
    return geometry;
}

RoomGeometry default_room_geometry() {
    return build_ap_ring(6.0, 64, 0.375, 4.5);
}

Placement sample_placement(const RoomGeometry &geometry, const Topology &topology, RandomStream &rng) {
    const int ring_size = static_cast<int>(geometry.ap_ring.size());
    if (topology.ap_count > ring_size)
        throw std::invalid_argument("placement: ap_count " + std::to_string(topology.ap_count) +
                                    " exceeds ring size " + std::to_string(ring_size));

    Placement placement;
    placement.ap_indices = rng.sample_without_replacement(ring_size, topology.ap_count);
    placement.ap_positions.reserve(placement.ap_indices.size());
    for (int idx : placement.ap_indices)
        placement.ap_positions.push_back(geometry.ap_ring[static_cast<std::size_t>(idx)]);

    const double margin = (geometry.side - geometry.ue_area_side) / 2.0;
    placement.ue_positions.reserve(static_cast<std::size_t>(topology.ue_count));
    for (int k = 0; k < topology.ue_count; ++k) {
        const double x = margin + rng.uniform() * geometry.ue_area_side;
        const double y = margin + rng.uniform() * geometry.ue_area_side;
        placement.ue_positions.push_back({x, y});
    }
    return placement;
}

} // namespace mimosim
