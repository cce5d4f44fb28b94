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
#include <span>
#include <string_view>
#include <vector>

#include "leocoex/geometry.hpp"
#include "leocoex/grid.hpp"

namespace leocoex {

enum class SystemTag { primary, secondary };

std::string_view to_string(SystemTag tag);

/// One Walker-Delta shell.
struct ShellParams {
    double altitude_km = 550.0;
    double inclination_deg = 53.0;
    int num_planes = 1;
    int sats_per_plane = 1;
    int phasing_factor = 1;  // Walker F
    double raan_offset_deg = 0.0;
    double anomaly_offset_deg = 0.0;

    int size() const { return num_planes * sats_per_plane; }

    /// Throws std::invalid_argument when a shell invariant is broken.
    void validate() const;
};

struct OrbitalElements {
    int shell = 0;
    double raan_deg = 0.0;
    double mean_anomaly_deg = 0.0;  // at epoch
};

struct PropagationOptions {
    double earth_rotation_rate = kEarthRotationRate;  // rad/s; 0 freezes the Earth
};

class Constellation {
public:
    Constellation() = default;
    Constellation(SystemTag tag, std::vector<ShellParams> shells, std::vector<OrbitalElements> elements,
                  double epoch_s);

    SystemTag tag() const { return tag_; }
    const std::vector<ShellParams>& shells() const { return shells_; }
    const std::vector<OrbitalElements>& elements() const { return elements_; }
    double epoch_s() const { return epoch_s_; }
    int size() const { return static_cast<int>(elements_.size()); }

    double min_altitude_m() const;
    double max_altitude_m() const;

    /// ECEF position of one satellite `time_s` seconds after the simulation start.
    Vec3 position(int sat, double time_s, const PropagationOptions& opts = {}) const;

private:
    struct Orbit {
        double radius_m;
        double mean_motion;  // rad/s
        double anomaly0;     // rad
        double cos_raan, sin_raan, cos_inc, sin_inc;
    };

    SystemTag tag_ = SystemTag::primary;
    std::vector<ShellParams> shells_;
    std::vector<OrbitalElements> elements_;
    std::vector<Orbit> orbits_;
    double epoch_s_ = 0.0;
};

struct SatelliteState {
    int satellite_id = 0;
    Vec3 position;  // ECEF metres
    SystemTag system = SystemTag::primary;
};

/// Evenly spaced planes in RAAN, evenly spaced satellites in each plane and
/// an inter-plane phase of F * 360 / (planes * sats_per_plane) degrees.
Constellation build_walker_delta(std::span<const ShellParams> shells, SystemTag tag, double epoch_s = 0.0);

/// Circular Keplerian motion in an inertial frame, rotated into ECEF.
std::vector<SatelliteState> propagate_ecef(const Constellation& constellation, std::int64_t slot,
                                           double slot_duration_s, const PropagationOptions& opts = {});

double orbital_period_s(double altitude_km);

/// Elevation of `sat` above the local horizontal plane at `ground`, degrees.
double elevation_angle_deg(const Vec3& ground, const Vec3& sat);

/// Minimum elevation of a satellite over all cell centres of a cluster.
double cluster_min_elevation_deg(const Cluster& cluster, const Vec3& sat);

/// True when the satellite clears `eps_min_deg` at every cell of the cluster.
bool visible_from_cluster(const Cluster& cluster, const Vec3& sat, double eps_min_deg);

struct OverheadSets {
    std::vector<std::vector<int>> per_cluster;  // satellite ids, ascending
    std::vector<int> all;                       // union over clusters, ascending
};

OverheadSets overhead_sets(std::span<const SatelliteState> states, const CellGrid& grid, double eps_min_deg);

/// Starlink shells from the public filings (six shells, 6900 satellites).
std::vector<ShellParams> starlink_shells();

/// Project Kuiper shells (three shells, 3236 satellites).
std::vector<ShellParams> kuiper_shells();

}  // namespace leocoex
