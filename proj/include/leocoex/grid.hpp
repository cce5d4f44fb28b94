// SPDX-License-Identifier: Apache-2.0
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

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "leocoex/geometry.hpp"

namespace leocoex {

/// Axial coordinates on a hexagonal lattice.
struct HexCoord {
    int q = 0;
    int r = 0;
    bool operator==(const HexCoord&) const = default;
};

/// Hex distance between two axial coordinates.
int hex_distance(HexCoord a, HexCoord b);

/// Reuse colour in {1, 2, 3}; adjacent lattice cells never share a colour.
int reuse_color(HexCoord c);

/// One cluster entry of a region description. Either `lattice` (cluster
/// super-lattice index, so that clusters tile without gaps) or `center`
/// (snapped to the nearest cell of the region lattice) must be given.
struct ClusterSpec {
    std::optional<HexCoord> lattice;
    std::optional<LatLon> center;
    int priority = 0;
};

struct RegionConfig {
    LatLon origin{31.0, -97.5};
    double cell_radius_km = 10.0;
    int rings = 6;  // 3*rings*(rings+1)+1 cells per cluster
    std::vector<ClusterSpec> clusters;
};

struct Cell {
    HexCoord hex;
    LatLon latlon;
    Vec3 position;  // ECEF on the surface
    Vec3 up;        // unit local vertical
    int color = 1;
};

struct Cluster {
    HexCoord center_hex;
    LatLon center;
    Vec3 center_position;
    int priority = 0;  // 1 = highest
    std::vector<Cell> cells;
};

/// Fixed deployment of clusters and cells shared by both systems.
class CellGrid {
public:
    CellGrid() = default;
    CellGrid(std::vector<Cluster> clusters, double cell_radius_km);

    const std::vector<Cluster>& clusters() const { return clusters_; }
    const Cluster& cluster(int n) const { return clusters_.at(n); }
    int num_clusters() const { return static_cast<int>(clusters_.size()); }
    int cells_per_cluster() const { return cells_per_cluster_; }
    int num_cells() const { return num_clusters() * cells_per_cluster_; }
    double cell_radius_km() const { return cell_radius_km_; }

    /// Cluster indices ordered from highest to lowest priority.
    const std::vector<int>& priority_order() const { return priority_order_; }

    /// Flat index of a cell; also the id of its representative user.
    int cell_id(int cluster, int cell) const { return cluster * cells_per_cluster_ + cell; }
    const Cell& cell_by_id(int id) const
    {
        return clusters_[id / cells_per_cluster_].cells[id % cells_per_cluster_];
    }

private:
    std::vector<Cluster> clusters_;
    std::vector<int> priority_order_;
    int cells_per_cluster_ = 0;
    double cell_radius_km_ = 0.0;
};

/// A ground user. The first num_cells users sit at the cell centres (id =
/// cell id) and form the protected set; extra users are scattered uniformly
/// inside their cell and only feed statistics.
struct GroundUser {
    int id = 0;
    int cluster = 0;
    int cell = 0;  // index within the cluster
    Vec3 position;
    int color = 1;
    bool representative = true;
};

/// Cell-centre users followed by `extra_per_cell` seeded random users per cell.
std::vector<GroundUser> make_users(const CellGrid& grid, int extra_per_cell, std::uint64_t seed);

/// Builds hexagonally packed clusters on a single region-wide lattice with a
/// deterministic 3-colouring. Throws std::invalid_argument on overlapping
/// clusters, non-permutation priorities or bad geometry.
CellGrid build_grid(const RegionConfig& config);

/// Ten clusters tiling a region over central and east Texas. The centres are
/// illustrative; the layout only has to be plausible.
RegionConfig texas_region();

/// Three adjacent clusters taken from the Texas layout.
RegionConfig small_region();

}  // namespace leocoex
