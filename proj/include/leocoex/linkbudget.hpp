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

#include <span>
#include <vector>

#include "leocoex/antenna.hpp"
#include "leocoex/geometry.hpp"
#include "leocoex/grid.hpp"
#include "leocoex/orbits.hpp"

namespace leocoex {

/// Per-system transmit side. All densities are per Hz.
struct SystemRadio {
    double max_eirp_dbw_hz = -54.3;
    double top_altitude_m = 570e3;  // nadir range at which the EIRP cap applies
    double eps_min_deg = 25.0;
    AntennaPattern tx = satellite_tx_pattern();
};

struct LinkParams {
    double carrier_ghz = 20.0;
    double noise_psd_dbm_hz = -174.0;
    double noise_figure_db = 1.2;
    AntennaPattern rx = user_rx_pattern();
    SystemRadio primary{-54.3, 570e3};
    SystemRadio secondary{-53.3, 630e3};

    const SystemRadio& radio(SystemTag tag) const { return tag == SystemTag::primary ? primary : secondary; }
    double noise_dbw_hz() const { return noise_psd_dbm_hz - 30.0 + noise_figure_db; }

    void validate() const;
};

/// Free-space path loss in dB for a carrier in GHz and a range in metres.
double free_space_path_loss_db(double carrier_ghz, double distance_m);

/// Range-compensated EIRP density: the cap applies at `top_altitude_m` and
/// scales with range squared so the ground PSD stays constant.
double controlled_eirp_dbw_hz(const SystemRadio& radio, double slant_distance_m);

/// SNR (linear) of a user served by `serving_sat` whose beam points at
/// `cell_center`. The user terminal points its own beam at the server.
/// Throws std::domain_error when the server is below the system's minimum
/// elevation as seen by the user.
double link_snr(const LinkParams& link, SystemTag serving_system, const Vec3& user, const Vec3& serving_sat,
                const Vec3& cell_center);

/// INR (linear) at `user` from one beam of `interferer_sat` steered at
/// `interferer_cell`. The user's receive beam points at `serving_sat`.
double beam_inr(const LinkParams& link, SystemTag interferer_system, const Vec3& user, const Vec3& serving_sat,
                const Vec3& interferer_sat, const Vec3& interferer_cell);

/// Sum of beam_inr over the active cells of `cluster` that share the user's
/// reuse colour.
double satellite_cluster_inr(const LinkParams& link, SystemTag interferer_system, const Vec3& user, int user_color,
                             const Vec3& serving_sat, const Vec3& interferer_sat, const Cluster& cluster,
                             std::span<const int> active_cells);

/// One interfering satellite together with the cluster it serves.
struct ServingLink {
    Vec3 satellite;
    const Cluster* cluster = nullptr;
};

/// Sum over every serving link of satellite_cluster_inr.
double aggregate_inr(const LinkParams& link, SystemTag interferer_system, const Vec3& user, int user_color,
                     const Vec3& serving_sat, std::span<const ServingLink> links, std::span<const int> active_cells);

inline double link_sinr(double snr, double inr)
{
    return snr / (1.0 + inr);
}

/// Slot-level ingredients of a cluster capacity: the SINR of every served
/// user and whether the satellite clears the minimum elevation.
struct CapacitySlot {
    bool visible = false;
    std::vector<double> sinr;
};

/// Sum of log2(1 + SINR) over slots and served users, bits/s/Hz.
double cluster_capacity(std::span<const CapacitySlot> window);

/// Linear-domain evaluator shared by the per-slot accounting and the
/// coefficient builder, so both see bit-identical interference values.
class InterferenceKernel {
public:
    explicit InterferenceKernel(const LinkParams& link);

    const LinkParams& params() const { return link_; }

    /// Unit vector from `from` to `to`, together with the range.
    struct Ray {
        Vec3 dir;
        double range = 0.0;
    };
    static Ray ray(const Vec3& from, const Vec3& to);

    /// Received SNR of a cell-centre user; power control cancels range.
    double snr(SystemTag serving_system, double tx_offset_cos) const;

    /// Interference from one beam.
    /// `sat_to_cell`: interferer towards its boresight cell.
    /// `sat_to_user`: interferer towards the victim.
    /// `rx_offset_cos`: cosine of the angle at the victim between its server
    /// and the interferer.
    double beam(SystemTag interferer_system, const Ray& sat_to_cell, const Ray& sat_to_user,
                double rx_offset_cos) const;

    /// satellite_cluster_inr with precomputed rays from the interferer to
    /// each active co-channel cell.
    double sat_cluster(SystemTag interferer_system, std::span<const Ray> sat_to_cells, const Vec3& user,
                       const Vec3& user_to_server_dir, const Vec3& interferer_sat) const;

private:
    LinkParams link_;
    LinearPattern rx_;
    LinearPattern tx_primary_;
    LinearPattern tx_secondary_;
    double noise_lin_ = 1.0;
    double fspl_per_m2_ = 1.0;
    double eirp_per_m2_[2] = {1.0, 1.0};  // cap / top_altitude^2
};

}  // namespace leocoex
