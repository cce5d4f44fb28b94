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
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "leocoex/association.hpp"
#include "leocoex/metrics.hpp"
#include "leocoex/protection.hpp"
#include "leocoex/scenario.hpp"
#include "leocoex/solver.hpp"

namespace leocoex {

struct HandoverRecord {
    std::int64_t slot = 0;
    AssociationMatrix secondary;
    double utilization = 0.0;
    int candidates = 0;
    std::vector<int> candidates_per_cluster;

    // Protected mode only.
    double worst_past_sum = 0.0;
    double effective_avg_threshold = 0.0;  // linear
    double max_threshold = 0.0;            // linear
    bool feasible = true;
    double best_dual = 0.0;
    double primal = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<int> outage;
};

/// Flat sample pools, linear units. "center" pools hold the cell-centre
/// representatives, "extra" pools the random users.
struct SamplePools {
    std::vector<double> center;
    std::vector<double> extra;
    std::vector<double> center_lit;  // subset of `center` whose cell beam is on
};

struct LinkRow {
    double time_s = 0.0;
    int user = 0;
    SystemTag system = SystemTag::primary;
    double snr = 0.0;
    double inr = 0.0;
    double sinr = 0.0;
};

struct RunResult {
    Scenario scenario;
    std::int64_t num_slots = 0;
    int num_users = 0;  // protected primary users (cell centres)

    InrTrace primary_inr;  // protected users, every slot; zero when the user has no server
    std::vector<double> violation_rate;  // per slot, against the average threshold
    std::vector<HandoverRecord> handovers;

    SamplePools primary_inr_pool;  // users with a transmitting server
    SamplePools secondary_inr_pool;
    SamplePools primary_sinr_pool;  // users in lit cells
    SamplePools secondary_sinr_pool;

    std::string association_csv;  // time_s,system,cluster,sat_id rows, no header
    std::vector<LinkRow> link_rows;

    WindowReport window_report;
};

struct RunOptions {
    /// Replaces the primary policy; the simulation does not take ownership.
    AssociationSource* primary_source = nullptr;
    /// Called once per handover instant with a short progress line.
    std::function<void(const std::string&)> progress;
};

RunResult run_simulation(const Scenario& scenario, const RunOptions& options = {});

/// Writes every output file into `out_dir`. Refuses an existing directory
/// unless `overwrite` is set.
void export_results(const RunResult& result, const std::filesystem::path& out_dir, bool overwrite);

/// JSON summary text (also written by export_results).
std::string summary_json(const RunResult& result);

/// Scenario echo as JSON text.
std::string scenario_json(const Scenario& s);

}  // namespace leocoex
