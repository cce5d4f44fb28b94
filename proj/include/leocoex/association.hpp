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
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leocoex/grid.hpp"
#include "leocoex/orbits.hpp"

namespace leocoex {

inline constexpr int kUnserved = -1;

/// Satellite-to-cluster association valid over one handover period.
struct AssociationMatrix {
    SystemTag system = SystemTag::primary;
    std::vector<int> serving;  // per cluster: satellite id or kUnserved

    AssociationMatrix() = default;
    AssociationMatrix(SystemTag tag, int num_clusters) : system(tag), serving(num_clusters, kUnserved) {}

    int num_clusters() const { return static_cast<int>(serving.size()); }
    int served_count() const;

    /// No satellite serves more than one cluster.
    bool is_valid() const;

    bool operator==(const AssociationMatrix&) const = default;
};

/// Cells lit by one satellite in one slot: (slot * N_B + j) mod N_C for
/// j = 0..N_B-1, ascending.
std::vector<int> schedule_beams(int num_beams, int cells_per_cluster, std::int64_t slot);

/// Beam counts the coexistence study sweeps over.
bool is_standard_beam_count(int num_beams);

/// A candidate satellite with its ranking score (larger is better).
struct RankedCandidate {
    int satellite = 0;
    double score = 0.0;
};

/// Orders candidates by score, descending; equal scores by ascending id.
void sort_candidates(std::vector<RankedCandidate>& candidates);

/// Clusters in `order` take, one after another, their best candidate that no
/// other cluster holds yet. Clusters not listed in `order` keep `fixed`.
AssociationMatrix priority_greedy(const std::vector<std::vector<RankedCandidate>>& ranked,
                                  std::span<const int> order, const AssociationMatrix& fixed);

/// Highest-elevation policy. Elevation is measured at the cluster centre.
AssociationMatrix assign_highest_elevation(std::span<const SatelliteState> states, const CellGrid& grid,
                                           double eps_min_deg, SystemTag system);

enum class HandoverPolicy { highest_elevation, max_contact_time };

HandoverPolicy parse_policy(std::string_view name);
std::string_view to_string(HandoverPolicy policy);

/// Remaining-visibility bookkeeping for the maximum-contact-time policy.
/// Visibility runs are found by exact propagation, capped at one orbit.
class ContactTimeOracle {
public:
    ContactTimeOracle(const Constellation& constellation, const CellGrid& grid, double eps_min_deg,
                      double slot_duration_s, const PropagationOptions& opts = {});

    bool visible(int satellite, int cluster, std::int64_t slot) const;

    /// Consecutive slots, starting at `slot`, for which the satellite stays
    /// visible from the cluster. Zero when it is not visible at `slot`.
    std::int64_t remaining_slots(int satellite, int cluster, std::int64_t slot);

private:
    const Constellation* constellation_;
    const CellGrid* grid_;
    double eps_min_deg_;
    double slot_duration_s_;
    PropagationOptions opts_;
    std::vector<std::int64_t> cap_slots_;  // per satellite
    std::map<std::pair<int, int>, std::pair<std::int64_t, std::int64_t>> runs_;  // (sat, cluster) -> [from, until)
};

/// Maximum-contact-time policy. A cluster hands over only when its server is
/// not visible at `slot + 1` (or it has none); the replacement is the visible
/// satellite with the longest remaining contact.
AssociationMatrix assign_max_contact_time(std::span<const SatelliteState> states, const CellGrid& grid,
                                          double eps_min_deg, const AssociationMatrix& prev, std::int64_t slot,
                                          ContactTimeOracle& oracle);

/// Per-slot association of one system over the whole run. The policy source
/// below simulates HE or MCT; the trace source replays a recorded
/// `time_s,system,cluster,sat_id` file.
class AssociationSource {
public:
    virtual ~AssociationSource() = default;
    virtual SystemTag system() const = 0;
    virtual bool covers(std::int64_t slot) const = 0;
    virtual const AssociationMatrix& at(std::int64_t slot) = 0;
};

struct PolicyConfig {
    HandoverPolicy policy = HandoverPolicy::highest_elevation;
    double eps_min_deg = 25.0;
    int handover_slots = 150;  // HE re-association period
    double slot_duration_s = 0.1;
    PropagationOptions propagation;
};

class PolicyAssociationSource : public AssociationSource {
public:
    PolicyAssociationSource(const Constellation& constellation, const CellGrid& grid, PolicyConfig cfg);

    SystemTag system() const override { return constellation_->tag(); }
    bool covers(std::int64_t slot) const override { return slot >= 0; }
    const AssociationMatrix& at(std::int64_t slot) override;

private:
    void advance();

    const Constellation* constellation_;
    const CellGrid* grid_;
    PolicyConfig cfg_;
    ContactTimeOracle oracle_;
    std::vector<AssociationMatrix> history_;
};

class TraceAssociationSource : public AssociationSource {
public:
    /// Rows for other systems are ignored; sat_id -1 marks an unserved cluster.
    TraceAssociationSource(std::istream& in, SystemTag system, int num_clusters, double slot_duration_s);

    SystemTag system() const override { return system_; }
    bool covers(std::int64_t slot) const override { return slot >= 0 && slot <= last_slot_; }
    const AssociationMatrix& at(std::int64_t slot) override;

private:
    SystemTag system_;
    std::int64_t last_slot_ = -1;
    std::map<std::int64_t, AssociationMatrix> changes_;  // slot -> full matrix from that slot on
};

/// Writes one row per cluster whose server changed, plus every cluster at slot 0.
void write_association_rows(std::ostream& out, const AssociationMatrix* prev, const AssociationMatrix& cur,
                            double time_s);

}  // namespace leocoex
