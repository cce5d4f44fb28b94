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

#include "leocoex/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace leocoex {

namespace {

struct PlanePoint {
    double east = 0.0;
    double north = 0.0;
};

// Pointy-top axial layout with centre spacing sqrt(3) * cell radius.
PlanePoint hex_to_plane(HexCoord h, double spacing_m)
{
    return {spacing_m * (h.q + 0.5 * h.r), spacing_m * (std::sqrt(3.0) / 2.0) * h.r};
}

HexCoord plane_to_hex(PlanePoint p, double spacing_m)
{
    const double r = p.north / (spacing_m * std::sqrt(3.0) / 2.0);
    const double q = p.east / spacing_m - 0.5 * r;
    // Cube rounding.
    const double s = -q - r;
    double rq = std::round(q);
    double rr = std::round(r);
    const double rs = std::round(s);
    const double dq = std::abs(rq - q);
    const double dr = std::abs(rr - r);
    const double ds = std::abs(rs - s);
    if (dq > dr && dq > ds) {
        rq = -rr - rs;
    } else if (dr > ds) {
        rr = -rq - rs;
    }
    return {static_cast<int>(rq), static_cast<int>(rr)};
}

// Forward azimuthal-equidistant projection about `origin`.
PlanePoint latlon_to_plane(LatLon origin, LatLon p)
{
    const double lat1 = deg_to_rad(origin.lat_deg);
    const double lat2 = deg_to_rad(p.lat_deg);
    const double dlon = deg_to_rad(p.lon_deg - origin.lon_deg);
    const double dist = surface_distance_m(origin, p);
    if (dist == 0.0) {
        return {};
    }
    const double bearing = std::atan2(std::sin(dlon) * std::cos(lat2),
                                      std::cos(lat1) * std::sin(lat2) -
                                          std::sin(lat1) * std::cos(lat2) * std::cos(dlon));
    return {dist * std::sin(bearing), dist * std::cos(bearing)};
}

struct HexLess {
    bool operator()(HexCoord a, HexCoord b) const { return a.q != b.q ? a.q < b.q : a.r < b.r; }
};

}  // namespace

int hex_distance(HexCoord a, HexCoord b)
{
    const int dq = a.q - b.q;
    const int dr = a.r - b.r;
    return (std::abs(dq) + std::abs(dr) + std::abs(dq + dr)) / 2;
}

int reuse_color(HexCoord c)
{
    return ((c.q - c.r) % 3 + 3) % 3 + 1;
}

CellGrid::CellGrid(std::vector<Cluster> clusters, double cell_radius_km)
    : clusters_(std::move(clusters)), cell_radius_km_(cell_radius_km)
{
    cells_per_cluster_ = clusters_.empty() ? 0 : static_cast<int>(clusters_.front().cells.size());
    for (const auto& c : clusters_) {
        if (static_cast<int>(c.cells.size()) != cells_per_cluster_) {
            throw std::invalid_argument("all clusters must hold the same number of cells");
        }
    }
    priority_order_.resize(clusters_.size());
    std::iota(priority_order_.begin(), priority_order_.end(), 0);
    std::stable_sort(priority_order_.begin(), priority_order_.end(),
                     [&](int a, int b) { return clusters_[a].priority < clusters_[b].priority; });
}

CellGrid build_grid(const RegionConfig& config)
{
    if (config.clusters.empty()) {
        throw std::invalid_argument("region needs at least one cluster");
    }
    if (!(config.cell_radius_km > 0.0)) {
        throw std::invalid_argument("cell radius must be positive");
    }
    if (config.rings < 0) {
        throw std::invalid_argument("cluster ring count must be non-negative");
    }

    const double spacing = std::sqrt(3.0) * config.cell_radius_km * 1e3;
    const int n = config.rings;
    // Translation basis under which radius-n hexagonal clusters tile the plane.
    const HexCoord basis_a{n + 1, n};
    const HexCoord basis_b{-n, 2 * n + 1};

    // Priorities: either all unset (list order) or a permutation of 1..N.
    const auto num = static_cast<int>(config.clusters.size());
    std::vector<int> priorities(num);
    const bool any_set = std::any_of(config.clusters.begin(), config.clusters.end(),
                                     [](const ClusterSpec& c) { return c.priority != 0; });
    for (int i = 0; i < num; ++i) {
        priorities[i] = any_set ? config.clusters[i].priority : i + 1;
    }
    {
        auto sorted = priorities;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < num; ++i) {
            if (sorted[i] != i + 1) {
                throw std::invalid_argument("cluster priorities must be a permutation of 1..N_G");
            }
        }
    }

    std::vector<HexCoord> ring_offsets;
    for (int q = -n; q <= n; ++q) {
        for (int r = -n; r <= n; ++r) {
            if (hex_distance({q, r}, {0, 0}) <= n) {
                ring_offsets.push_back({q, r});
            }
        }
    }
    // Centre first, then ring by ring.
    std::stable_sort(ring_offsets.begin(), ring_offsets.end(), [](HexCoord a, HexCoord b) {
        const int da = hex_distance(a, {0, 0});
        const int db = hex_distance(b, {0, 0});
        if (da != db) {
            return da < db;
        }
        return HexLess{}(a, b);
    });

    std::map<HexCoord, int, HexLess> owner;
    std::vector<Cluster> clusters;
    clusters.reserve(num);
    for (int i = 0; i < num; ++i) {
        const auto& spec = config.clusters[i];
        HexCoord centre;
        if (spec.lattice) {
            centre = {spec.lattice->q * basis_a.q + spec.lattice->r * basis_b.q,
                      spec.lattice->q * basis_a.r + spec.lattice->r * basis_b.r};
        } else if (spec.center) {
            centre = plane_to_hex(latlon_to_plane(config.origin, *spec.center), spacing);
        } else {
            throw std::invalid_argument("cluster " + std::to_string(i) + " has neither lattice nor center");
        }

        Cluster cl;
        cl.center_hex = centre;
        cl.priority = priorities[i];
        const PlanePoint cp = hex_to_plane(centre, spacing);
        cl.center = offset_latlon(config.origin, cp.east, cp.north);
        cl.center_position = geodetic_to_ecef(cl.center);
        cl.cells.reserve(ring_offsets.size());
        for (const auto& off : ring_offsets) {
            const HexCoord h{centre.q + off.q, centre.r + off.r};
            const auto [it, inserted] = owner.emplace(h, i);
            if (!inserted) {
                throw std::invalid_argument("clusters " + std::to_string(it->second) + " and " +
                                            std::to_string(i) + " overlap");
            }
            Cell cell;
            cell.hex = h;
            const PlanePoint p = hex_to_plane(h, spacing);
            cell.latlon = offset_latlon(config.origin, p.east, p.north);
            cell.position = geodetic_to_ecef(cell.latlon);
            cell.up = normalized(cell.position);
            cell.color = reuse_color(h);
            cl.cells.push_back(cell);
        }
        clusters.push_back(std::move(cl));
    }
    return CellGrid(std::move(clusters), config.cell_radius_km);
}

std::vector<GroundUser> make_users(const CellGrid& grid, int extra_per_cell, std::uint64_t seed)
{
    if (extra_per_cell < 0) {
        throw std::invalid_argument("extra users per cell must be non-negative");
    }
    std::vector<GroundUser> users;
    users.reserve(static_cast<std::size_t>(grid.num_cells()) * (1 + extra_per_cell));
    for (int n = 0; n < grid.num_clusters(); ++n) {
        for (int l = 0; l < grid.cells_per_cluster(); ++l) {
            const Cell& c = grid.cluster(n).cells[l];
            users.push_back({grid.cell_id(n, l), n, l, c.position, c.color, true});
        }
    }
    if (extra_per_cell == 0) {
        return users;
    }
    std::mt19937_64 rng(seed);
    const double radius = grid.cell_radius_km() * 1e3;
    std::uniform_real_distribution<double> coord(-radius, radius);
    const double half_width = radius * std::sqrt(3.0) / 2.0;
    for (int n = 0; n < grid.num_clusters(); ++n) {
        for (int l = 0; l < grid.cells_per_cluster(); ++l) {
            const Cell& c = grid.cluster(n).cells[l];
            for (int k = 0; k < extra_per_cell; ++k) {
                double e = 0.0;
                double north = 0.0;
                // Rejection sample inside the pointy-top hexagon.
                do {
                    e = coord(rng);
                    north = coord(rng);
                } while (std::abs(e) > half_width || std::abs(north) > radius - std::abs(e) / std::sqrt(3.0));
                const Vec3 pos = geodetic_to_ecef(offset_latlon(c.latlon, e, north));
                users.push_back({static_cast<int>(users.size()), n, l, pos, c.color, false});
            }
        }
    }
    return users;
}

RegionConfig texas_region()
{
    RegionConfig cfg;
    cfg.origin = {30.6, -97.2};
    // Super-lattice offsets: the centre cluster, its six neighbours, then
    // three more extending the region east, west and north-east.
    const HexCoord layout[] = {{0, 0}, {1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}, {2, -1}, {-2, 1}, {1, 1}};
    int priority = 1;
    for (const auto& h : layout) {
        cfg.clusters.push_back({h, std::nullopt, priority++});
    }
    return cfg;
}

RegionConfig small_region()
{
    RegionConfig cfg = texas_region();
    cfg.clusters.resize(3);
    return cfg;
}

}  // namespace leocoex
