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

#ifndef MIMOSIM_TOPOLOGY_HPP
#define MIMOSIM_TOPOLOGY_HPP

#include <string_view>
#include <vector>

#include "mimosim/random.hpp"

namespace mimosim {

// Antenna system topology triple (M, L, K): total BS antennas, AP
// locations, and single-antenna UEs. Antennas are split evenly across the
// APs, so ap_count must divide total_antennas.
struct Topology {
    int total_antennas = 0; // M
    int ap_count = 0;       // L
    int ue_count = 0;       // K

    friend bool operator==(const Topology &, const Topology &) = default;
};

enum class TopologyClass { colocated, semi_distributed, fully_distributed };

// Validates the triple and rejects non-integer antennas-per-AP splits.
Topology make_topology(int total_antennas, int ap_count, int ue_count);

TopologyClass classify(const Topology &t);
std::string_view topology_class_name(TopologyClass c);

inline int antennas_per_ap(const Topology &t) {
    return t.total_antennas / t.ap_count;
}

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2 &, const Point2 &) = default;
};

// Square room with candidate AP positions on an evenly spaced perimeter
// ring and a centered square area from which UE positions are drawn.
struct RoomGeometry {
    double side = 6.0;
    double ue_area_side = 4.5;
    std::vector<Point2> ap_ring;
};

// Places `count` ring points at equal arc spacing along the room perimeter.
// Traversal starts at corner (0,0) and runs counter-clockwise; the first
// point sits spacing/2 into the bottom wall so no AP lands on a corner.
// count * spacing must equal the perimeter within 1e-9 m.
RoomGeometry build_ap_ring(double side, int count, double spacing, double ue_area_side = 4.5);

// 6x6 m room, 64 ring points 0.375 m apart, 4.5x4.5 m UE area.
RoomGeometry default_room_geometry();

struct Placement {
    std::vector<int> ap_indices;      // distinct indices into ap_ring, selection order
    std::vector<Point2> ap_positions; // resolved ring coordinates, same order
    std::vector<Point2> ue_positions; // inside the UE area square
};

// Draws ap_count distinct ring indices uniformly without replacement and
// ue_count positions uniformly over the UE area.
Placement sample_placement(const RoomGeometry &geometry, const Topology &topology, RandomStream &rng);

} // namespace mimosim

#endif
