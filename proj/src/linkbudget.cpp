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

#include "leocoex/linkbudget.hpp"

#include <cmath>
#include <stdexcept>

#include "leocoex/units.hpp"

namespace leocoex {

void LinkParams::validate() const
{
    if (!(carrier_ghz > 0.0)) {
        throw std::invalid_argument("carrier frequency must be positive");
    }
    if (!(noise_figure_db >= 0.0)) {
        throw std::invalid_argument("noise figure must be non-negative");
    }
    rx.validate();
    for (const SystemRadio* r : {&primary, &secondary}) {
        r->tx.validate();
        if (!(r->top_altitude_m > 0.0)) {
            throw std::invalid_argument("power-control reference altitude must be positive");
        }
        if (!(r->eps_min_deg >= -90.0 && r->eps_min_deg <= 90.0)) {
            throw std::invalid_argument("minimum elevation must lie in [-90, 90] degrees");
        }
    }
}

double free_space_path_loss_db(double carrier_ghz, double distance_m)
{
    if (!(carrier_ghz > 0.0) || !(distance_m > 0.0)) {
        throw std::invalid_argument("path loss needs positive frequency and distance");
    }
    return 32.45 + 20.0 * std::log10(carrier_ghz) + 20.0 * std::log10(distance_m);
}

double controlled_eirp_dbw_hz(const SystemRadio& radio, double slant_distance_m)
{
    return radio.max_eirp_dbw_hz + 20.0 * std::log10(slant_distance_m / radio.top_altitude_m);
}

double link_snr(const LinkParams& link, SystemTag serving_system, const Vec3& user, const Vec3& serving_sat,
                const Vec3& cell_center)
{
    const SystemRadio& radio = link.radio(serving_system);
    if (elevation_angle_deg(user, serving_sat) < radio.eps_min_deg) {
        throw std::domain_error("serving satellite is below the minimum elevation");
    }
    const double to_cell = norm(cell_center - serving_sat);
    const double to_user = norm(user - serving_sat);
    const double tx_off = to_user == 0.0 || to_cell == 0.0 ? 0.0
                                                           : boresight_offset_angle(serving_sat, cell_center, user);
    const double snr_db = controlled_eirp_dbw_hz(radio, to_cell) - radio.tx.peak_gain_dbi +
                          pattern_gain(radio.tx, tx_off) + link.rx.peak_gain_dbi -
                          free_space_path_loss_db(link.carrier_ghz, to_user) - link.noise_dbw_hz();
    return db_to_linear(snr_db);
}

double beam_inr(const LinkParams& link, SystemTag interferer_system, const Vec3& user, const Vec3& serving_sat,
                const Vec3& interferer_sat, const Vec3& interferer_cell)
{
    const SystemRadio& radio = link.radio(interferer_system);
    const double to_cell = norm(interferer_cell - interferer_sat);
    const double to_user = norm(user - interferer_sat);
    const double tx_off = boresight_offset_angle(interferer_sat, interferer_cell, user);
    const double rx_off = boresight_offset_angle(user, serving_sat, interferer_sat);
    const double inr_db = controlled_eirp_dbw_hz(radio, to_cell) - radio.tx.peak_gain_dbi +
                          pattern_gain(radio.tx, tx_off) + pattern_gain(link.rx, rx_off) -
                          free_space_path_loss_db(link.carrier_ghz, to_user) - link.noise_dbw_hz();
    return db_to_linear(inr_db);
}

double satellite_cluster_inr(const LinkParams& link, SystemTag interferer_system, const Vec3& user, int user_color,
                             const Vec3& serving_sat, const Vec3& interferer_sat, const Cluster& cluster,
                             std::span<const int> active_cells)
{
    double sum = 0.0;
    for (int idx : active_cells) {
        const Cell& c = cluster.cells.at(idx);
        if (c.color != user_color) {
            continue;
        }
        sum += beam_inr(link, interferer_system, user, serving_sat, interferer_sat, c.position);
    }
    return sum;
}

double aggregate_inr(const LinkParams& link, SystemTag interferer_system, const Vec3& user, int user_color,
                     const Vec3& serving_sat, std::span<const ServingLink> links, std::span<const int> active_cells)
{
    double sum = 0.0;
    for (const auto& l : links) {
        sum += satellite_cluster_inr(link, interferer_system, user, user_color, serving_sat, l.satellite, *l.cluster,
                                     active_cells);
    }
    return sum;
}

double cluster_capacity(std::span<const CapacitySlot> window)
{
    double total = 0.0;
    for (const auto& slot : window) {
        if (!slot.visible) {
            continue;
        }
        for (double g : slot.sinr) {
            total += std::log2(1.0 + g);
        }
    }
    return total;
}

InterferenceKernel::InterferenceKernel(const LinkParams& link)
    : link_(link), rx_(link.rx), tx_primary_(link.primary.tx), tx_secondary_(link.secondary.tx)
{
    link_.validate();
    noise_lin_ = db_to_linear(link_.noise_dbw_hz());
    // FSPL(d) = k * d^2 with d in metres.
    fspl_per_m2_ = db_to_linear(32.45 + 20.0 * std::log10(link_.carrier_ghz));
    int i = 0;
    for (const SystemRadio* r : {&link_.primary, &link_.secondary}) {
        eirp_per_m2_[i++] = db_to_linear(r->max_eirp_dbw_hz) / (r->top_altitude_m * r->top_altitude_m);
    }
}

InterferenceKernel::Ray InterferenceKernel::ray(const Vec3& from, const Vec3& to)
{
    const Vec3 d = to - from;
    const double r = norm(d);
    return {d / r, r};
}

double InterferenceKernel::snr(SystemTag serving_system, double tx_offset_cos) const
{
    const int s = serving_system == SystemTag::primary ? 0 : 1;
    const LinearPattern& tx = s == 0 ? tx_primary_ : tx_secondary_;
    // EIRP and path loss both scale with range squared.
    return eirp_per_m2_[s] * (tx.gain_from_cos(tx_offset_cos) / tx.peak()) * rx_.peak() / (noise_lin_ * fspl_per_m2_);
}

double InterferenceKernel::beam(SystemTag interferer_system, const Ray& sat_to_cell, const Ray& sat_to_user,
                                double rx_offset_cos) const
{
    const int s = interferer_system == SystemTag::primary ? 0 : 1;
    const LinearPattern& tx = s == 0 ? tx_primary_ : tx_secondary_;
    const double eirp = eirp_per_m2_[s] * sat_to_cell.range * sat_to_cell.range;
    const double gtx = tx.gain_from_cos(dot(sat_to_cell.dir, sat_to_user.dir)) / tx.peak();
    const double grx = rx_.gain_from_cos(rx_offset_cos);
    return eirp * gtx * grx / (noise_lin_ * fspl_per_m2_ * sat_to_user.range * sat_to_user.range);
}

double InterferenceKernel::sat_cluster(SystemTag interferer_system, std::span<const Ray> sat_to_cells,
                                       const Vec3& user, const Vec3& user_to_server_dir,
                                       const Vec3& interferer_sat) const
{
    if (sat_to_cells.empty()) {
        return 0.0;
    }
    const Ray to_user = ray(interferer_sat, user);
    // The victim looks up the reversed ray.
    const double rx_cos = -dot(user_to_server_dir, to_user.dir);
    const int s = interferer_system == SystemTag::primary ? 0 : 1;
    const LinearPattern& tx = s == 0 ? tx_primary_ : tx_secondary_;
    double sum = 0.0;
    for (const auto& c : sat_to_cells) {
        sum += c.range * c.range * tx.gain_from_cos(dot(c.dir, to_user.dir));
    }
    return sum * eirp_per_m2_[s] * rx_.gain_from_cos(rx_cos) /
           (tx.peak() * noise_lin_ * fspl_per_m2_ * to_user.range * to_user.range);
}

}  // namespace leocoex
