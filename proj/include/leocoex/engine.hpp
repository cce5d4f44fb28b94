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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "leocoex/association.hpp"
#include "leocoex/grid.hpp"
#include "leocoex/linkbudget.hpp"
#include "leocoex/orbits.hpp"

namespace leocoex {

/// Rays from one satellite to the lit cells of the cluster it serves,
/// grouped by reuse colour (index colour - 1).
struct BeamRays {
    std::array<std::vector<InterferenceKernel::Ray>, 3> by_color;
};

/// Where a user's receive beam points in one slot.
struct ServerDirections {
    std::vector<Vec3> dir;   // unit user -> server
    std::vector<char> has;   // 0 when the user's cluster has no transmitting server
};

/// Geometry and link evaluation shared by the slot accounting and the
/// coefficient builder. Every interference number in a run goes through
/// sat_cluster(), so both paths see identical values.
class InterferenceEngine {
public:
    InterferenceEngine(const CellGrid& grid, const LinkParams& link);

    const CellGrid& grid() const { return *grid_; }
    const InterferenceKernel& kernel() const { return kernel_; }
    double eps_min_deg(SystemTag system) const { return kernel_.params().radio(system).eps_min_deg; }

    /// A satellite transmits towards a cluster only while it clears the
    /// minimum elevation over every cell of that cluster.
    bool transmitting(SystemTag system, const Vec3& sat, int cluster) const;

    BeamRays beam_rays(const Vec3& sat, int cluster, std::span<const int> active_cells) const;

    /// Receive direction of each user: towards the server of its own cluster
    /// in `assoc` when that server is transmitting.
    ServerDirections server_directions(std::span<const GroundUser> users, const AssociationMatrix& assoc,
                                       std::span<const Vec3> positions) const;

    /// Interference at `user` from every lit co-channel beam of one satellite.
    double sat_cluster(SystemTag interferer, const BeamRays& rays, const GroundUser& user, const Vec3& user_dir,
                       const Vec3& sat) const;

private:
    const CellGrid* grid_;
    InterferenceKernel kernel_;
};

/// Positions and primary association over the slots of one handover period.
struct WindowState {
    std::int64_t start_slot = 0;
    int num_slots = 0;
    std::vector<std::vector<Vec3>> primary;    // [slot offset][satellite]
    std::vector<std::vector<Vec3>> secondary;  // [slot offset][satellite]
    std::vector<AssociationMatrix> primary_assoc;
    std::vector<std::vector<int>> active_cells;  // shared beam rotation
};

WindowState build_window(const Constellation& primary, const Constellation& secondary,
                         AssociationSource& primary_source, std::int64_t start_slot, int num_slots,
                         double slot_duration_s, int num_beams, int cells_per_cluster,
                         const PropagationOptions& opts = {});

}  // namespace leocoex
