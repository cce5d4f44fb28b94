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

#include "leocoex/engine.hpp"

#include <stdexcept>
#include <string>

namespace leocoex {

InterferenceEngine::InterferenceEngine(const CellGrid& grid, const LinkParams& link) : grid_(&grid), kernel_(link)
{
}

bool InterferenceEngine::transmitting(SystemTag system, const Vec3& sat, int cluster) const
{
    return visible_from_cluster(grid_->cluster(cluster), sat, eps_min_deg(system));
}

BeamRays InterferenceEngine::beam_rays(const Vec3& sat, int cluster, std::span<const int> active_cells) const
{
    BeamRays out;
    const Cluster& cl = grid_->cluster(cluster);
    for (int idx : active_cells) {
        const Cell& c = cl.cells[idx];
        out.by_color[c.color - 1].push_back(InterferenceKernel::ray(sat, c.position));
    }
    return out;
}

ServerDirections InterferenceEngine::server_directions(std::span<const GroundUser> users,
                                                       const AssociationMatrix& assoc,
                                                       std::span<const Vec3> positions) const
{
    std::vector<char> live(grid_->num_clusters(), 0);
    for (int n = 0; n < grid_->num_clusters(); ++n) {
        const int s = assoc.serving[n];
        live[n] = s != kUnserved && transmitting(assoc.system, positions[s], n);
    }
    ServerDirections out;
    out.dir.resize(users.size());
    out.has.resize(users.size(), 0);
    for (std::size_t i = 0; i < users.size(); ++i) {
        const int n = users[i].cluster;
        if (!live[n]) {
            continue;
        }
        out.dir[i] = InterferenceKernel::ray(users[i].position, positions[assoc.serving[n]]).dir;
        out.has[i] = 1;
    }
    return out;
}

double InterferenceEngine::sat_cluster(SystemTag interferer, const BeamRays& rays, const GroundUser& user,
                                       const Vec3& user_dir, const Vec3& sat) const
{
    return kernel_.sat_cluster(interferer, rays.by_color[user.color - 1], user.position, user_dir, sat);
}

WindowState build_window(const Constellation& primary, const Constellation& secondary,
                         AssociationSource& primary_source, std::int64_t start_slot, int num_slots,
                         double slot_duration_s, int num_beams, int cells_per_cluster,
                         const PropagationOptions& opts)
{
    if (num_slots < 1) {
        throw std::invalid_argument("window needs at least one slot");
    }
    WindowState w;
    w.start_slot = start_slot;
    w.num_slots = num_slots;
    w.primary.resize(num_slots);
    w.secondary.resize(num_slots);
    w.active_cells.resize(num_slots);
    for (int k = 0; k < num_slots; ++k) {
        const std::int64_t slot = start_slot + k;
        if (!primary_source.covers(slot)) {
            throw std::runtime_error("primary association source does not cover slot " + std::to_string(slot));
        }
        const double t = static_cast<double>(slot) * slot_duration_s;
        w.primary[k].resize(primary.size());
        for (int i = 0; i < primary.size(); ++i) {
            w.primary[k][i] = primary.position(i, t, opts);
        }
        w.secondary[k].resize(secondary.size());
        for (int i = 0; i < secondary.size(); ++i) {
            w.secondary[k][i] = secondary.position(i, t, opts);
        }
        w.primary_assoc.push_back(primary_source.at(slot));
        w.active_cells[k] = schedule_beams(num_beams, cells_per_cluster, slot);
    }
    return w;
}

}  // namespace leocoex
