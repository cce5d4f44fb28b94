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

#include "leocoex/orbits.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace leocoex {

std::string_view to_string(SystemTag tag)
{
    return tag == SystemTag::primary ? "primary" : "secondary";
}

void ShellParams::validate() const
{
    if (!(altitude_km > 0.0)) {
        throw std::invalid_argument("shell altitude must be positive");
    }
    if (!(inclination_deg >= 0.0 && inclination_deg <= 180.0)) {
        throw std::invalid_argument("shell inclination must lie in [0, 180] degrees");
    }
    if (num_planes < 1 || sats_per_plane < 1) {
        throw std::invalid_argument("shell needs at least one plane and one satellite per plane");
    }
    if (phasing_factor < 0 || phasing_factor >= std::max(num_planes, 1)) {
        // A single-plane shell has no inter-plane phasing; F = 0 only.
        if (!(num_planes == 1 && phasing_factor <= 1 && phasing_factor >= 0)) {
            throw std::invalid_argument("Walker phasing factor must satisfy 0 <= F < planes");
        }
    }
}

Constellation::Constellation(SystemTag tag, std::vector<ShellParams> shells, std::vector<OrbitalElements> elements,
                             double epoch_s)
    : tag_(tag), shells_(std::move(shells)), elements_(std::move(elements)), epoch_s_(epoch_s)
{
    orbits_.reserve(elements_.size());
    for (const auto& el : elements_) {
        const auto& shell = shells_.at(el.shell);
        const double radius = kEarthRadiusM + shell.altitude_km * 1e3;
        const double raan = deg_to_rad(el.raan_deg);
        const double inc = deg_to_rad(shell.inclination_deg);
        orbits_.push_back({radius, std::sqrt(kEarthMu / (radius * radius * radius)), deg_to_rad(el.mean_anomaly_deg),
                           std::cos(raan), std::sin(raan), std::cos(inc), std::sin(inc)});
    }
}

double Constellation::min_altitude_m() const
{
    double h = std::numeric_limits<double>::infinity();
    for (const auto& s : shells_) {
        h = std::min(h, s.altitude_km * 1e3);
    }
    return h;
}

double Constellation::max_altitude_m() const
{
    double h = 0.0;
    for (const auto& s : shells_) {
        h = std::max(h, s.altitude_km * 1e3);
    }
    return h;
}

Vec3 Constellation::position(int sat, double time_s, const PropagationOptions& opts) const
{
    const Orbit& o = orbits_[sat];
    const double u = o.anomaly0 + o.mean_motion * (epoch_s_ + time_s);
    const double cu = std::cos(u);
    const double su = std::sin(u);
    // Perifocal (circular) -> inertial.
    const double xi = o.radius_m * (o.cos_raan * cu - o.sin_raan * su * o.cos_inc);
    const double yi = o.radius_m * (o.sin_raan * cu + o.cos_raan * su * o.cos_inc);
    const double zi = o.radius_m * (su * o.sin_inc);
    // Inertial -> Earth-fixed.
    const double theta = opts.earth_rotation_rate * time_s;
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    return {ct * xi + st * yi, -st * xi + ct * yi, zi};
}

Constellation build_walker_delta(std::span<const ShellParams> shells, SystemTag tag, double epoch_s)
{
    std::vector<OrbitalElements> elements;
    for (std::size_t s = 0; s < shells.size(); ++s) {
        const auto& shell = shells[s];
        shell.validate();
        const double total = shell.size();
        for (int p = 0; p < shell.num_planes; ++p) {
            const double raan = shell.raan_offset_deg + 360.0 * p / shell.num_planes;
            for (int k = 0; k < shell.sats_per_plane; ++k) {
                const double anomaly = shell.anomaly_offset_deg + 360.0 * k / shell.sats_per_plane +
                                       360.0 * shell.phasing_factor * p / total;
                elements.push_back({static_cast<int>(s), std::fmod(raan, 360.0), std::fmod(anomaly, 360.0)});
            }
        }
    }
    return Constellation(tag, std::vector<ShellParams>(shells.begin(), shells.end()), std::move(elements), epoch_s);
}

std::vector<SatelliteState> propagate_ecef(const Constellation& constellation, std::int64_t slot,
                                           double slot_duration_s, const PropagationOptions& opts)
{
    if (slot < 0) {
        throw std::invalid_argument("time slot must be non-negative");
    }
    const double t = static_cast<double>(slot) * slot_duration_s;
    std::vector<SatelliteState> out(constellation.size());
    for (int i = 0; i < constellation.size(); ++i) {
        out[i] = {i, constellation.position(i, t, opts), constellation.tag()};
    }
    return out;
}

double orbital_period_s(double altitude_km)
{
    const double a = kEarthRadiusM + altitude_km * 1e3;
    return 2.0 * std::numbers::pi * std::sqrt(a * a * a / kEarthMu);
}

double elevation_angle_deg(const Vec3& ground, const Vec3& sat)
{
    const double gn = norm(ground);
    if (gn == 0.0) {
        throw std::invalid_argument("ground point must not be the Earth centre");
    }
    const Vec3 los = sat - ground;
    const double ln = norm(los);
    if (ln == 0.0) {
        throw std::invalid_argument("satellite coincides with ground point");
    }
    const double s = dot(ground, los) / (gn * ln);
    return rad_to_deg(std::asin(std::clamp(s, -1.0, 1.0)));
}

namespace {

// Sine of the smallest elevation over the cluster's cells; stops early once
// the value drops below `floor`.
double min_elevation_sine(const Cluster& cluster, const Vec3& sat, double floor)
{
    double lowest = 1.0;
    for (const auto& cell : cluster.cells) {
        const Vec3 los = sat - cell.position;
        const double s = dot(cell.up, los) / norm(los);
        lowest = std::min(lowest, s);
        if (lowest < floor) {
            break;
        }
    }
    return lowest;
}

}  // namespace

double cluster_min_elevation_deg(const Cluster& cluster, const Vec3& sat)
{
    const double s = min_elevation_sine(cluster, sat, -2.0);
    return rad_to_deg(std::asin(std::clamp(s, -1.0, 1.0)));
}

bool visible_from_cluster(const Cluster& cluster, const Vec3& sat, double eps_min_deg)
{
    if (eps_min_deg > 90.0) {
        return false;
    }
    const double threshold = std::sin(deg_to_rad(eps_min_deg));
    return min_elevation_sine(cluster, sat, threshold) >= threshold;
}

OverheadSets overhead_sets(std::span<const SatelliteState> states, const CellGrid& grid, double eps_min_deg)
{
    OverheadSets out;
    out.per_cluster.resize(grid.num_clusters());
    if (eps_min_deg > 90.0) {
        return out;
    }
    const double threshold = std::sin(deg_to_rad(eps_min_deg));
    std::vector<char> in_union(states.size(), 0);
    for (int n = 0; n < grid.num_clusters(); ++n) {
        const Cluster& cl = grid.cluster(n);
        for (std::size_t i = 0; i < states.size(); ++i) {
            // The cluster centre is one of its cells, so a satellite below the
            // threshold there is below it for the whole cluster.
            const Vec3 los = states[i].position - cl.center_position;
            if (dot(cl.cells.front().up, los) / norm(los) < threshold) {
                continue;
            }
            if (min_elevation_sine(cl, states[i].position, threshold) >= threshold) {
                out.per_cluster[n].push_back(states[i].satellite_id);
                in_union[i] = 1;
            }
        }
        std::sort(out.per_cluster[n].begin(), out.per_cluster[n].end());
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (in_union[i]) {
            out.all.push_back(states[i].satellite_id);
        }
    }
    std::sort(out.all.begin(), out.all.end());
    return out;
}

std::vector<ShellParams> starlink_shells()
{
    return {
        {540.0, 53.2, 72, 22, 1},
        {550.0, 53.0, 72, 22, 1},
        {560.0, 97.6, 4, 43, 1},
        {560.0, 97.6, 6, 58, 1},
        {570.0, 70.0, 36, 20, 1},
        {530.0, 33.0, 28, 89, 1},
    };
}

std::vector<ShellParams> kuiper_shells()
{
    return {
        {590.0, 33.0, 28, 28, 1},
        {610.0, 42.0, 36, 36, 1},
        {630.0, 51.9, 34, 34, 1},
    };
}

}  // namespace leocoex
