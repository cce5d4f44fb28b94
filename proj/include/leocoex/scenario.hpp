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
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "leocoex/antenna.hpp"
#include "leocoex/association.hpp"
#include "leocoex/grid.hpp"
#include "leocoex/linkbudget.hpp"
#include "leocoex/orbits.hpp"
#include "leocoex/protection.hpp"
#include "leocoex/solver.hpp"

namespace leocoex {

enum class RunMode { baseline, protect };

RunMode parse_mode(std::string_view name);
std::string_view to_string(RunMode mode);

struct SystemConfig {
    std::vector<ShellParams> shells;
    HandoverPolicy policy = HandoverPolicy::highest_elevation;
    double eps_min_deg = 25.0;
    double max_eirp_dbw_hz = -54.3;
    double handover_s = 15.0;       // highest-elevation re-association period
    std::string association_trace;  // primary only: replay instead of a policy
};

struct Scenario {
    std::uint64_t seed = 0;
    RunMode mode = RunMode::protect;
    double slot_duration_s = 0.1;
    double duration_s = 60.0;
    int beams = 16;
    bool allow_nonstandard_beams = false;
    bool earth_rotation = true;
    bool random_epoch_offsets = false;

    SystemConfig primary;
    SystemConfig secondary;

    AntennaPattern tx = satellite_tx_pattern();
    AntennaPattern rx = user_rx_pattern();
    double carrier_ghz = 20.0;
    double noise_psd_dbm_hz = -174.0;
    double noise_figure_db = 1.2;

    RegionConfig region;

    double inr_avg_th_db = -6.0;
    double inr_max_th_db = std::numeric_limits<double>::infinity();
    double th_s = 15.0;
    double tw_s = 10.0;

    SolverConfig solver;
    int extra_users_per_cell = 0;
    bool link_trace = false;

    /// Every broken invariant, one message each. Empty when valid.
    std::vector<std::string> problems() const;

    /// Throws ScenarioError listing problems().
    void validate() const;

    std::int64_t num_slots() const;
    ProtectionConfig protection() const;

    /// Per-system radio parameters; the power-control reference is the
    /// highest shell of each constellation.
    LinkParams link() const;

    PropagationOptions propagation() const;
};

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Full-size preset: six Starlink shells, three Kuiper shells, ten clusters.
Scenario default_scenario();

/// Three clusters, otherwise the default.
Scenario small_region_scenario();

/// Commented YAML describing default_scenario(); accepted by parse_scenario.
std::string_view default_scenario_yaml();

/// Parses YAML text on top of default_scenario(). Unknown keys, type errors
/// and invariant violations are all collected into one ScenarioError.
Scenario parse_scenario(const std::string& text, const std::string& origin = "<string>");

Scenario load_scenario(const std::filesystem::path& path);

/// Builds both constellations, applying seeded epoch offsets when enabled.
struct Constellations {
    Constellation primary;
    Constellation secondary;
};
Constellations build_constellations(const Scenario& s);

}  // namespace leocoex
