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

#include "leocoex/association.hpp"
#include "leocoex/engine.hpp"

namespace leocoex {

/// One (satellite, cluster) option of a handover instant.
struct Candidate {
    int satellite = 0;
    int cluster = 0;
    double capacity = 0.0;         // bits/s/Hz summed over the period
    std::vector<double> avg;       // per protected user: mean INR over the period
    std::vector<double> per_slot;  // [slot][user] INR
    double worst_avg = 0.0;        // max over users of avg
    double worst_slot = 0.0;       // max over users and slots of per_slot
};

/// Candidates of one handover instant plus the indexing the solver needs.
struct CoeffTable {
    int num_clusters = 0;
    int num_users = 0;
    int num_slots = 0;
    std::vector<int> priority_order;  // cluster indices, highest priority first
    std::vector<Candidate> candidates;

    // Filled by finalize().
    std::vector<std::vector<int>> by_cluster;  // candidate indices per cluster
    std::vector<int> satellites;               // distinct satellite ids, ascending
    std::vector<int> sat_index;                // candidate -> position in `satellites`

    /// Recomputes worst-case scalars and indexes; call after editing candidates.
    void finalize();
};

/// Builds the table for the handover period covered by `window`. Candidates
/// are the satellites overhead of each cluster at the first slot; the first
/// grid.num_cells() entries of `users` are the protected set.
CoeffTable build_coefficients(const InterferenceEngine& engine, const WindowState& window,
                              std::span<const GroundUser> users);

struct Multipliers {
    double lambda = 0.0;
    double mu = 0.0;
    std::vector<double> nu;  // aligned with CoeffTable::satellites
};

enum class UpdateRule {
    ascent,   // multiplier + step * subgradient, then clip at zero
    descent,  // multiplier - step * subgradient, then clip at zero
};

UpdateRule parse_update_rule(std::string_view name);
std::string_view to_string(UpdateRule rule);

struct SolverConfig {
    int max_iterations = 200;
    double step_a = 1.0;  // step k = a / (b + k)
    double step_b = 10.0;
    double tolerance = 1e-6;  // relative change of the dual value
    double lambda_scale = 1.0;
    double mu_scale = 1.0;
    double nu_scale = 1.0;
    UpdateRule rule = UpdateRule::ascent;
    bool local_search = true;
    int price_ladder = 3;  // extra repair starts at interference prices 2^-n..2^n of the reference; 0 disables

    void validate() const;
};

/// Linear thresholds of one handover instant. `avg` is the effective
/// per-period budget and may be negative; either may be +inf.
struct Thresholds {
    double avg = 0.0;
    double max = 0.0;
};

/// Chosen candidate index per cluster, -1 for none.
using Selection = std::vector<int>;

double candidate_score(const CoeffTable& table, int candidate, const Multipliers& m);

/// Best-scoring candidate of a cluster, or -1 when no score is positive.
int cluster_subproblem(const CoeffTable& table, int cluster, const Multipliers& m);

double primal_objective(const CoeffTable& table, const Selection& x);

double dual_value(const CoeffTable& table, const Selection& x, const Multipliers& m, const Thresholds& th);

struct Subgradients {
    double lambda = 0.0;
    double mu = 0.0;
    std::vector<double> nu;
};

Subgradients compute_subgradients(const CoeffTable& table, const Selection& x, const Thresholds& th);

/// Step k >= 1. A multiplier whose threshold is infinite stays at zero.
Multipliers update_multipliers(const Multipliers& m, const Subgradients& s, int k, const SolverConfig& cfg);

/// Largest per-user period average and per-slot sum under `x`, summed in
/// cluster priority order.
struct Loads {
    double worst_avg = 0.0;
    double worst_slot = 0.0;
};
Loads selection_loads(const CoeffTable& table, const Selection& x);

bool is_feasible(const CoeffTable& table, const Selection& x, const Thresholds& th);

/// Greedy in priority order: each cluster takes its best-scoring unused
/// candidate that keeps every user within both thresholds.
Selection repair(const CoeffTable& table, const Multipliers& m, const Thresholds& th);

/// Single- and two-cluster replacements that raise the objective and stay
/// feasible, until none is left.
Selection improve_locally(const CoeffTable& table, Selection x, const Thresholds& th);

struct SolveResult {
    Selection selection;
    AssociationMatrix association;
    double best_dual = 0.0;
    double primal = 0.0;
    int iterations = 0;
    bool converged = false;
    bool feasible = true;  // both thresholds non-negative, so the constraints can hold
    std::vector<int> outage;  // unserved clusters
    Multipliers best_multipliers;
    std::vector<double> dual_trace;
};

SolveResult solve_handover(const CoeffTable& table, const Thresholds& th, const SolverConfig& cfg);

struct OracleResult {
    Selection selection;
    double objective = 0.0;
    bool any_feasible = false;
    std::int64_t evaluated = 0;
};

/// Exhaustive search; throws std::length_error when the number of
/// assignments exceeds `budget`.
OracleResult brute_force_oracle(const CoeffTable& table, const Thresholds& th, std::int64_t budget = 1'000'000);

AssociationMatrix to_association(const CoeffTable& table, const Selection& x);

}  // namespace leocoex
