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

#include "leocoex/association.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace leocoex {

int AssociationMatrix::served_count() const
{
    return static_cast<int>(std::count_if(serving.begin(), serving.end(), [](int s) { return s != kUnserved; }));
}

bool AssociationMatrix::is_valid() const
{
    std::unordered_set<int> seen;
    for (int s : serving) {
        if (s == kUnserved) {
            continue;
        }
        if (s < 0 || !seen.insert(s).second) {
            return false;
        }
    }
    return true;
}

std::vector<int> schedule_beams(int num_beams, int cells_per_cluster, std::int64_t slot)
{
    if (cells_per_cluster < 1) {
        throw std::invalid_argument("cluster must hold at least one cell");
    }
    if (num_beams < 1 || num_beams > cells_per_cluster) {
        throw std::invalid_argument("beam count must lie in [1, cells per cluster]");
    }
    if (slot < 0) {
        throw std::invalid_argument("time slot must be non-negative");
    }
    std::vector<int> cells(num_beams);
    const std::int64_t base = (slot % cells_per_cluster) * num_beams;
    for (int j = 0; j < num_beams; ++j) {
        cells[j] = static_cast<int>((base + j) % cells_per_cluster);
    }
    std::sort(cells.begin(), cells.end());
    return cells;
}

bool is_standard_beam_count(int num_beams)
{
    return num_beams == 8 || num_beams == 16 || num_beams == 24 || num_beams == 32;
}

void sort_candidates(std::vector<RankedCandidate>& candidates)
{
    std::sort(candidates.begin(), candidates.end(), [](const RankedCandidate& a, const RankedCandidate& b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        return a.satellite < b.satellite;
    });
}

AssociationMatrix priority_greedy(const std::vector<std::vector<RankedCandidate>>& ranked,
                                  std::span<const int> order, const AssociationMatrix& fixed)
{
    AssociationMatrix out = fixed;
    std::unordered_set<int> taken;
    std::vector<char> open(out.num_clusters(), 0);
    for (int n : order) {
        open.at(n) = 1;
    }
    for (int n = 0; n < out.num_clusters(); ++n) {
        if (!open[n] && out.serving[n] != kUnserved) {
            taken.insert(out.serving[n]);
        }
    }
    for (int n : order) {
        out.serving[n] = kUnserved;
        for (const auto& c : ranked.at(n)) {
            if (!taken.count(c.satellite)) {
                out.serving[n] = c.satellite;
                taken.insert(c.satellite);
                break;
            }
        }
    }
    return out;
}

AssociationMatrix assign_highest_elevation(std::span<const SatelliteState> states, const CellGrid& grid,
                                           double eps_min_deg, SystemTag system)
{
    const OverheadSets sets = overhead_sets(states, grid, eps_min_deg);
    std::vector<const SatelliteState*> by_id;
    for (const auto& s : states) {
        if (s.satellite_id >= static_cast<int>(by_id.size())) {
            by_id.resize(s.satellite_id + 1, nullptr);
        }
        by_id[s.satellite_id] = &s;
    }
    std::vector<std::vector<RankedCandidate>> ranked(grid.num_clusters());
    for (int n = 0; n < grid.num_clusters(); ++n) {
        const Vec3& centre = grid.cluster(n).center_position;
        for (int sat : sets.per_cluster[n]) {
            ranked[n].push_back({sat, elevation_angle_deg(centre, by_id[sat]->position)});
        }
        sort_candidates(ranked[n]);
    }
    return priority_greedy(ranked, grid.priority_order(), AssociationMatrix(system, grid.num_clusters()));
}

HandoverPolicy parse_policy(std::string_view name)
{
    if (name == "he" || name == "highest_elevation") {
        return HandoverPolicy::highest_elevation;
    }
    if (name == "mct" || name == "max_contact_time") {
        return HandoverPolicy::max_contact_time;
    }
    throw std::invalid_argument("unknown handover policy '" + std::string(name) + "' (expected he or mct)");
}

std::string_view to_string(HandoverPolicy policy)
{
    return policy == HandoverPolicy::highest_elevation ? "he" : "mct";
}

ContactTimeOracle::ContactTimeOracle(const Constellation& constellation, const CellGrid& grid, double eps_min_deg,
                                     double slot_duration_s, const PropagationOptions& opts)
    : constellation_(&constellation), grid_(&grid), eps_min_deg_(eps_min_deg), slot_duration_s_(slot_duration_s),
      opts_(opts)
{
    if (!(slot_duration_s > 0.0)) {
        throw std::invalid_argument("slot duration must be positive");
    }
    cap_slots_.resize(constellation.size());
    for (int i = 0; i < constellation.size(); ++i) {
        const auto& shell = constellation.shells()[constellation.elements()[i].shell];
        cap_slots_[i] = static_cast<std::int64_t>(std::ceil(orbital_period_s(shell.altitude_km) / slot_duration_s));
    }
}

bool ContactTimeOracle::visible(int satellite, int cluster, std::int64_t slot) const
{
    const Vec3 pos = constellation_->position(satellite, static_cast<double>(slot) * slot_duration_s_, opts_);
    return visible_from_cluster(grid_->cluster(cluster), pos, eps_min_deg_);
}

std::int64_t ContactTimeOracle::remaining_slots(int satellite, int cluster, std::int64_t slot)
{
    const std::int64_t cap = cap_slots_.at(satellite);
    const auto key = std::make_pair(satellite, cluster);
    if (auto it = runs_.find(key); it != runs_.end()) {
        const auto [from, until] = it->second;
        // A run that hit the cap is only trusted from where it was measured.
        const bool capped = until - from >= cap;
        if (slot >= from && slot < until && (!capped || slot == from)) {
            return std::min(until - slot, cap);
        }
    }
    if (!visible(satellite, cluster, slot)) {
        return 0;
    }
    constexpr std::int64_t kStride = 10;
    std::int64_t last = slot;  // known visible
    while (last + kStride - slot < cap && visible(satellite, cluster, last + kStride)) {
        last += kStride;
    }
    std::int64_t until = last + 1;
    while (until - slot < cap && visible(satellite, cluster, until)) {
        ++until;
    }
    until = std::min(until, slot + cap);
    runs_[key] = {slot, until};
    return until - slot;
}

AssociationMatrix assign_max_contact_time(std::span<const SatelliteState> states, const CellGrid& grid,
                                          double eps_min_deg, const AssociationMatrix& prev, std::int64_t slot,
                                          ContactTimeOracle& oracle)
{
    std::vector<int> triggered;
    for (int n : grid.priority_order()) {
        const int s = prev.serving.at(n);
        if (s == kUnserved || !oracle.visible(s, n, slot + 1)) {
            triggered.push_back(n);
        }
    }
    if (triggered.empty()) {
        return prev;
    }
    const OverheadSets sets = overhead_sets(states, grid, eps_min_deg);
    std::vector<std::vector<RankedCandidate>> ranked(grid.num_clusters());
    for (int n : triggered) {
        for (int sat : sets.per_cluster[n]) {
            ranked[n].push_back({sat, static_cast<double>(oracle.remaining_slots(sat, n, slot))});
        }
        sort_candidates(ranked[n]);
    }
    return priority_greedy(ranked, triggered, prev);
}

PolicyAssociationSource::PolicyAssociationSource(const Constellation& constellation, const CellGrid& grid,
                                                 PolicyConfig cfg)
    : constellation_(&constellation), grid_(&grid), cfg_(cfg),
      oracle_(constellation, grid, cfg.eps_min_deg, cfg.slot_duration_s, cfg.propagation)
{
    if (cfg_.handover_slots < 1) {
        throw std::invalid_argument("handover period must be at least one slot");
    }
}

const AssociationMatrix& PolicyAssociationSource::at(std::int64_t slot)
{
    if (slot < 0) {
        throw std::out_of_range("association requested for a negative slot");
    }
    while (static_cast<std::int64_t>(history_.size()) <= slot) {
        advance();
    }
    return history_[slot];
}

void PolicyAssociationSource::advance()
{
    const auto slot = static_cast<std::int64_t>(history_.size());
    const SystemTag tag = constellation_->tag();
    if (cfg_.policy == HandoverPolicy::highest_elevation) {
        if (slot % cfg_.handover_slots == 0) {
            const auto states = propagate_ecef(*constellation_, slot, cfg_.slot_duration_s, cfg_.propagation);
            history_.push_back(assign_highest_elevation(states, *grid_, cfg_.eps_min_deg, tag));
        } else {
            history_.push_back(history_.back());
        }
        return;
    }
    const AssociationMatrix prev = slot == 0 ? AssociationMatrix(tag, grid_->num_clusters()) : history_.back();
    bool any = false;
    for (int n = 0; n < grid_->num_clusters() && !any; ++n) {
        any = prev.serving[n] == kUnserved || !oracle_.visible(prev.serving[n], n, slot + 1);
    }
    if (!any) {
        history_.push_back(prev);
        return;
    }
    const auto states = propagate_ecef(*constellation_, slot, cfg_.slot_duration_s, cfg_.propagation);
    history_.push_back(assign_max_contact_time(states, *grid_, cfg_.eps_min_deg, prev, slot, oracle_));
}

namespace {

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

}  // namespace

TraceAssociationSource::TraceAssociationSource(std::istream& in, SystemTag system, int num_clusters,
                                               double slot_duration_s)
    : system_(system)
{
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("association trace is empty");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "time_s,system,cluster,sat_id") {
        throw std::runtime_error("association trace header must be 'time_s,system,cluster,sat_id'");
    }
    std::map<std::int64_t, std::vector<std::pair<int, int>>> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != 4) {
            throw std::runtime_error("association trace line " + std::to_string(lineno) + ": expected 4 fields");
        }
        if (f[1] != to_string(system)) {
            continue;
        }
        try {
            const double t = std::stod(f[0]);
            const int cluster = std::stoi(f[2]);
            const int sat = std::stoi(f[3]);
            if (cluster < 0 || cluster >= num_clusters) {
                throw std::out_of_range("cluster");
            }
            rows[std::llround(t / slot_duration_s)].push_back({cluster, sat < 0 ? kUnserved : sat});
        } catch (const std::logic_error&) {
            throw std::runtime_error("association trace line " + std::to_string(lineno) + ": bad value");
        }
    }
    AssociationMatrix cur(system, num_clusters);
    for (const auto& [slot, entries] : rows) {
        for (const auto& [cluster, sat] : entries) {
            cur.serving[cluster] = sat;
        }
        if (!cur.is_valid()) {
            throw std::runtime_error("association trace assigns one satellite to two clusters at slot " +
                                     std::to_string(slot));
        }
        changes_[slot] = cur;
        last_slot_ = slot;
    }
}

const AssociationMatrix& TraceAssociationSource::at(std::int64_t slot)
{
    if (!covers(slot) || changes_.empty() || slot < changes_.begin()->first) {
        throw std::out_of_range("association trace does not cover slot " + std::to_string(slot));
    }
    auto it = changes_.upper_bound(slot);
    return std::prev(it)->second;
}

void write_association_rows(std::ostream& out, const AssociationMatrix* prev, const AssociationMatrix& cur,
                            double time_s)
{
    char stamp[32];
    std::snprintf(stamp, sizeof stamp, "%.3f", time_s);
    for (int n = 0; n < cur.num_clusters(); ++n) {
        if (prev && prev->serving[n] == cur.serving[n]) {
            continue;
        }
        out << stamp << ',' << to_string(cur.system) << ',' << n << ',' << cur.serving[n] << '\n';
    }
}

}  // namespace leocoex
