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

#include "leocoex/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace leocoex {

namespace {

constexpr std::string_view kDefaultYaml =
#include "default_scenario.inc"
    ;

// Slots covered by `seconds`, or -1 when it is not a whole number of slots.
std::int64_t to_slots(double seconds, double slot)
{
    const double ratio = seconds / slot;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, std::abs(ratio))) {
        return -1;
    }
    return static_cast<std::int64_t>(rounded);
}

}  // namespace

RunMode parse_mode(std::string_view name)
{
    if (name == "baseline") {
        return RunMode::baseline;
    }
    if (name == "protected") {
        return RunMode::protect;
    }
    throw std::invalid_argument("unknown mode '" + std::string(name) + "' (expected baseline or protected)");
}

std::string_view to_string(RunMode mode)
{
    return mode == RunMode::baseline ? "baseline" : "protected";
}

std::vector<std::string> Scenario::problems() const
{
    std::vector<std::string> out;
    auto check = [&](bool ok, const std::string& msg) {
        if (!ok) {
            out.push_back(msg);
        }
    };
    auto guarded = [&](const std::string& prefix, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            out.push_back(prefix + e.what());
        }
    };

    check(slot_duration_s > 0.0, "slot_duration_s must be positive");
    check(duration_s > 0.0, "duration_s must be positive");
    check(th_s > 0.0, "protection.th_s must be positive");
    check(tw_s >= 0.0, "protection.tw_s must be non-negative");
    if (slot_duration_s > 0.0) {
        check(to_slots(duration_s, slot_duration_s) >= 0, "duration_s must be a whole number of slots");
        const auto th = to_slots(th_s, slot_duration_s);
        check(th >= 0, "protection.th_s must be a whole number of slots");
        check(th != 0, "protection.th_s must cover at least one slot");
        check(to_slots(tw_s, slot_duration_s) >= 0, "protection.tw_s must be a whole number of slots");
        check(duration_s + 1e-9 >= th_s, "duration_s must be at least one handover period (th_s)");
        const auto ho = to_slots(primary.handover_s, slot_duration_s);
        check(ho >= 1, "primary.handover_s must be a positive whole number of slots");
    }
    const int cells = 3 * region.rings * (region.rings + 1) + 1;
    check(beams >= 1 && beams <= cells, "beams must lie in [1, cells per cluster]");
    check(allow_nonstandard_beams || is_standard_beam_count(beams),
          "beams must be 8, 16, 24 or 32 unless allow_nonstandard_beams is set");
    check(!primary.shells.empty(), "primary.shells must not be empty");
    check(!secondary.shells.empty(), "secondary.shells must not be empty");
    for (std::size_t i = 0; i < primary.shells.size(); ++i) {
        guarded("primary.shells[" + std::to_string(i) + "]: ", [&] { primary.shells[i].validate(); });
    }
    for (std::size_t i = 0; i < secondary.shells.size(); ++i) {
        guarded("secondary.shells[" + std::to_string(i) + "]: ", [&] { secondary.shells[i].validate(); });
    }
    check(inr_max_th_db >= inr_avg_th_db, "protection.inr_max_th_db must be at least inr_avg_th_db");
    check(!std::isnan(inr_avg_th_db) && inr_avg_th_db < std::numeric_limits<double>::infinity(),
          "protection.inr_avg_th_db must be finite");
    check(extra_users_per_cell >= 0, "users.extra_per_cell must be non-negative");
    guarded("antenna.tx: ", [&] { tx.validate(); });
    guarded("antenna.rx: ", [&] { rx.validate(); });
    guarded("solver: ", [&] { solver.validate(); });
    if (!primary.shells.empty() && !secondary.shells.empty()) {
        guarded("link: ", [&] { link().validate(); });
    }
    guarded("region: ", [&] { build_grid(region); });
    return out;
}

void Scenario::validate() const
{
    const auto list = problems();
    if (list.empty()) {
        return;
    }
    std::string msg = "invalid scenario:";
    for (const auto& p : list) {
        msg += "\n  - " + p;
    }
    throw ScenarioError(msg);
}

std::int64_t Scenario::num_slots() const
{
    return to_slots(duration_s, slot_duration_s);
}

ProtectionConfig Scenario::protection() const
{
    ProtectionConfig p;
    p.inr_avg_threshold_db = inr_avg_th_db;
    p.inr_max_threshold_db = inr_max_th_db;
    p.window_past_slots = static_cast<int>(to_slots(tw_s, slot_duration_s));
    p.handover_period_slots = static_cast<int>(to_slots(th_s, slot_duration_s));
    return p;
}

LinkParams Scenario::link() const
{
    auto top = [](const std::vector<ShellParams>& shells) {
        double h = 0.0;
        for (const auto& s : shells) {
            h = std::max(h, s.altitude_km * 1e3);
        }
        return h;
    };
    LinkParams l;
    l.carrier_ghz = carrier_ghz;
    l.noise_psd_dbm_hz = noise_psd_dbm_hz;
    l.noise_figure_db = noise_figure_db;
    l.rx = rx;
    l.primary = {primary.max_eirp_dbw_hz, top(primary.shells), primary.eps_min_deg, tx};
    l.secondary = {secondary.max_eirp_dbw_hz, top(secondary.shells), secondary.eps_min_deg, tx};
    return l;
}

PropagationOptions Scenario::propagation() const
{
    PropagationOptions o;
    o.earth_rotation_rate = earth_rotation ? kEarthRotationRate : 0.0;
    return o;
}

Scenario default_scenario()
{
    Scenario s;
    s.primary.shells = starlink_shells();
    s.primary.max_eirp_dbw_hz = -54.3;
    s.secondary.shells = kuiper_shells();
    s.secondary.max_eirp_dbw_hz = -53.3;
    s.region = texas_region();
    return s;
}

Scenario small_region_scenario()
{
    Scenario s = default_scenario();
    s.region = small_region();
    return s;
}

std::string_view default_scenario_yaml()
{
    return kDefaultYaml;
}

namespace {

class Reader {
public:
    explicit Reader(std::string origin) : origin_(std::move(origin)) {}

    std::vector<std::string> errors;

    std::string where(const YAML::Node& n) const
    {
        const auto m = n.Mark();
        if (m.is_null()) {
            return origin_;
        }
        return origin_ + ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1);
    }

    void fail(const YAML::Node& n, const std::string& msg) { errors.push_back(where(n) + ": " + msg); }

    bool expect_map(const YAML::Node& n, const std::string& path)
    {
        if (!n.IsMap()) {
            fail(n, path + " must be a mapping");
            return false;
        }
        return true;
    }

    void check_keys(const YAML::Node& n, std::initializer_list<std::string_view> allowed, const std::string& path)
    {
        for (const auto& kv : n) {
            const auto key = kv.first.as<std::string>();
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                fail(kv.first, "unknown key '" + (path.empty() ? key : path + "." + key) + "'");
            }
        }
    }

    void number(const YAML::Node& map, const char* key, double& out, const std::string& path)
    {
        const YAML::Node n = map[key];
        if (!n) {
            return;
        }
        if (!n.IsScalar()) {
            fail(n, path + key + " must be a number");
            return;
        }
        std::string text = n.Scalar();
        std::string lower;
        for (char c : text) {
            lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
        if (lower == "inf" || lower == "+inf" || lower == ".inf" || lower == "+.inf") {
            out = std::numeric_limits<double>::infinity();
            return;
        }
        if (lower == "-inf" || lower == "-.inf") {
            out = -std::numeric_limits<double>::infinity();
            return;
        }
        try {
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used != text.size()) {
                throw std::invalid_argument(text);
            }
            out = v;
        } catch (const std::exception&) {
            fail(n, path + key + " must be a number, got '" + text + "'");
        }
    }

    template <typename Int>
    void integer(const YAML::Node& map, const char* key, Int& out, const std::string& path)
    {
        const YAML::Node n = map[key];
        if (!n) {
            return;
        }
        try {
            out = n.as<Int>();
        } catch (const YAML::Exception&) {
            fail(n, path + key + " must be an integer");
        }
    }

    void boolean(const YAML::Node& map, const char* key, bool& out, const std::string& path)
    {
        const YAML::Node n = map[key];
        if (!n) {
            return;
        }
        try {
            out = n.as<bool>();
        } catch (const YAML::Exception&) {
            fail(n, path + key + " must be true or false");
        }
    }

    void string(const YAML::Node& map, const char* key, std::string& out, const std::string& path)
    {
        const YAML::Node n = map[key];
        if (!n) {
            return;
        }
        if (!n.IsScalar()) {
            fail(n, path + key + " must be a string");
            return;
        }
        out = n.Scalar();
    }

    template <typename Fn>
    void choice(const YAML::Node& map, const char* key, const std::string& path, Fn&& fn)
    {
        std::string text;
        string(map, key, text, path);
        if (text.empty()) {
            return;
        }
        try {
            fn(text);
        } catch (const std::invalid_argument& e) {
            fail(map[key], path + key + ": " + e.what());
        }
    }

    std::vector<double> pair(const YAML::Node& n, const std::string& what)
    {
        if (!n.IsSequence() || n.size() != 2) {
            fail(n, what + " must be a two-element list");
            return {};
        }
        std::vector<double> v;
        for (const auto& e : n) {
            try {
                v.push_back(e.as<double>());
            } catch (const YAML::Exception&) {
                fail(e, what + " entries must be numbers");
                return {};
            }
        }
        return v;
    }

private:
    std::string origin_;
};

void read_shells(Reader& r, const YAML::Node& n, std::vector<ShellParams>& out, const std::string& path)
{
    if (!n) {
        return;
    }
    if (!n.IsSequence()) {
        r.fail(n, path + " must be a list");
        return;
    }
    out.clear();
    for (std::size_t i = 0; i < n.size(); ++i) {
        const YAML::Node s = n[i];
        const std::string p = path + "[" + std::to_string(i) + "].";
        if (!r.expect_map(s, p)) {
            continue;
        }
        r.check_keys(s,
                     {"altitude_km", "inclination_deg", "planes", "sats_per_plane", "phasing", "raan_offset_deg",
                      "anomaly_offset_deg"},
                     path + "[" + std::to_string(i) + "]");
        ShellParams sh;
        r.number(s, "altitude_km", sh.altitude_km, p);
        r.number(s, "inclination_deg", sh.inclination_deg, p);
        r.integer(s, "planes", sh.num_planes, p);
        r.integer(s, "sats_per_plane", sh.sats_per_plane, p);
        r.integer(s, "phasing", sh.phasing_factor, p);
        r.number(s, "raan_offset_deg", sh.raan_offset_deg, p);
        r.number(s, "anomaly_offset_deg", sh.anomaly_offset_deg, p);
        out.push_back(sh);
    }
}

void read_system(Reader& r, const YAML::Node& n, SystemConfig& sys, const std::string& name, bool primary)
{
    if (!n) {
        return;
    }
    if (!r.expect_map(n, name)) {
        return;
    }
    if (primary) {
        r.check_keys(n, {"policy", "eps_min_deg", "max_eirp_dbw_hz", "handover_s", "association_trace", "shells"},
                     name);
    } else {
        r.check_keys(n, {"policy", "eps_min_deg", "max_eirp_dbw_hz", "shells"}, name);
    }
    const std::string p = name + ".";
    r.choice(n, "policy", p, [&](const std::string& v) { sys.policy = parse_policy(v); });
    r.number(n, "eps_min_deg", sys.eps_min_deg, p);
    r.number(n, "max_eirp_dbw_hz", sys.max_eirp_dbw_hz, p);
    if (primary) {
        r.number(n, "handover_s", sys.handover_s, p);
        r.string(n, "association_trace", sys.association_trace, p);
    }
    read_shells(r, n["shells"], sys.shells, name + ".shells");
}

void read_pattern(Reader& r, const YAML::Node& n, AntennaPattern& pat, const std::string& name)
{
    if (!n || !r.expect_map(n, name)) {
        return;
    }
    r.check_keys(n, {"peak_gain_dbi", "beamwidth_3db_deg", "sidelobe_floor_db", "far_floor_dbi"}, name);
    const std::string p = name + ".";
    r.number(n, "peak_gain_dbi", pat.peak_gain_dbi, p);
    r.number(n, "beamwidth_3db_deg", pat.beamwidth_3db_deg, p);
    r.number(n, "sidelobe_floor_db", pat.sidelobe_floor_db, p);
    r.number(n, "far_floor_dbi", pat.far_floor_dbi, p);
}

void read_region(Reader& r, const YAML::Node& n, RegionConfig& region)
{
    if (!n || !r.expect_map(n, "region")) {
        return;
    }
    r.check_keys(n, {"origin", "cell_radius_km", "rings", "clusters"}, "region");
    if (n["origin"]) {
        const auto v = r.pair(n["origin"], "region.origin");
        if (v.size() == 2) {
            region.origin = {v[0], v[1]};
        }
    }
    r.number(n, "cell_radius_km", region.cell_radius_km, "region.");
    r.integer(n, "rings", region.rings, "region.");
    const YAML::Node list = n["clusters"];
    if (!list) {
        return;
    }
    if (!list.IsSequence()) {
        r.fail(list, "region.clusters must be a list");
        return;
    }
    region.clusters.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
        const YAML::Node c = list[i];
        const std::string path = "region.clusters[" + std::to_string(i) + "]";
        if (!r.expect_map(c, path)) {
            continue;
        }
        r.check_keys(c, {"lattice", "center", "priority"}, path);
        ClusterSpec spec;
        if (c["lattice"] && c["center"]) {
            r.fail(c, path + " must give either lattice or center, not both");
        }
        if (c["lattice"]) {
            const auto v = r.pair(c["lattice"], path + ".lattice");
            if (v.size() == 2) {
                if (v[0] != std::floor(v[0]) || v[1] != std::floor(v[1])) {
                    r.fail(c["lattice"], path + ".lattice entries must be integers");
                }
                spec.lattice = HexCoord{static_cast<int>(v[0]), static_cast<int>(v[1])};
            }
        } else if (c["center"]) {
            const auto v = r.pair(c["center"], path + ".center");
            if (v.size() == 2) {
                spec.center = LatLon{v[0], v[1]};
            }
        } else {
            r.fail(c, path + " needs lattice or center");
        }
        r.integer(c, "priority", spec.priority, path + ".");
        region.clusters.push_back(spec);
    }
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ScenarioError(origin + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                            ": " + e.msg);
    }
    Scenario s = default_scenario();
    if (!root || root.IsNull()) {
        s.validate();
        return s;
    }
    Reader r(origin);
    if (!r.expect_map(root, "scenario")) {
        throw ScenarioError(r.errors.front());
    }
    r.check_keys(root,
                 {"seed", "mode", "slot_duration_s", "duration_s", "beams", "allow_nonstandard_beams",
                  "earth_rotation", "epoch", "primary", "secondary", "antenna", "link", "region", "protection",
                  "solver", "users", "output"},
                 "");
    r.integer(root, "seed", s.seed, "");
    r.choice(root, "mode", "", [&](const std::string& v) { s.mode = parse_mode(v); });
    r.number(root, "slot_duration_s", s.slot_duration_s, "");
    r.number(root, "duration_s", s.duration_s, "");
    r.integer(root, "beams", s.beams, "");
    r.boolean(root, "allow_nonstandard_beams", s.allow_nonstandard_beams, "");
    r.boolean(root, "earth_rotation", s.earth_rotation, "");
    if (const auto n = root["epoch"]; n && r.expect_map(n, "epoch")) {
        r.check_keys(n, {"random_offsets"}, "epoch");
        r.boolean(n, "random_offsets", s.random_epoch_offsets, "epoch.");
    }
    read_system(r, root["primary"], s.primary, "primary", true);
    read_system(r, root["secondary"], s.secondary, "secondary", false);
    if (const auto n = root["antenna"]; n && r.expect_map(n, "antenna")) {
        r.check_keys(n, {"tx", "rx"}, "antenna");
        read_pattern(r, n["tx"], s.tx, "antenna.tx");
        read_pattern(r, n["rx"], s.rx, "antenna.rx");
    }
    if (const auto n = root["link"]; n && r.expect_map(n, "link")) {
        r.check_keys(n, {"carrier_ghz", "noise_psd_dbm_hz", "noise_figure_db"}, "link");
        r.number(n, "carrier_ghz", s.carrier_ghz, "link.");
        r.number(n, "noise_psd_dbm_hz", s.noise_psd_dbm_hz, "link.");
        r.number(n, "noise_figure_db", s.noise_figure_db, "link.");
    }
    read_region(r, root["region"], s.region);
    if (const auto n = root["protection"]; n && r.expect_map(n, "protection")) {
        r.check_keys(n, {"inr_avg_th_db", "inr_max_th_db", "th_s", "tw_s"}, "protection");
        r.number(n, "inr_avg_th_db", s.inr_avg_th_db, "protection.");
        r.number(n, "inr_max_th_db", s.inr_max_th_db, "protection.");
        r.number(n, "th_s", s.th_s, "protection.");
        r.number(n, "tw_s", s.tw_s, "protection.");
    }
    if (const auto n = root["solver"]; n && r.expect_map(n, "solver")) {
        r.check_keys(n,
                     {"max_iterations", "step_a", "step_b", "tolerance", "lambda_scale", "mu_scale", "nu_scale",
                      "update_rule", "local_search"},
                     "solver");
        r.integer(n, "max_iterations", s.solver.max_iterations, "solver.");
        r.number(n, "step_a", s.solver.step_a, "solver.");
        r.number(n, "step_b", s.solver.step_b, "solver.");
        r.number(n, "tolerance", s.solver.tolerance, "solver.");
        r.number(n, "lambda_scale", s.solver.lambda_scale, "solver.");
        r.number(n, "mu_scale", s.solver.mu_scale, "solver.");
        r.number(n, "nu_scale", s.solver.nu_scale, "solver.");
        r.choice(n, "update_rule", "solver.", [&](const std::string& v) { s.solver.rule = parse_update_rule(v); });
        r.boolean(n, "local_search", s.solver.local_search, "solver.");
    }
    if (const auto n = root["users"]; n && r.expect_map(n, "users")) {
        r.check_keys(n, {"extra_per_cell"}, "users");
        r.integer(n, "extra_per_cell", s.extra_users_per_cell, "users.");
    }
    if (const auto n = root["output"]; n && r.expect_map(n, "output")) {
        r.check_keys(n, {"link_trace"}, "output");
        r.boolean(n, "link_trace", s.link_trace, "output.");
    }

    std::vector<std::string> all = r.errors;
    if (all.empty()) {
        for (const auto& p : s.problems()) {
            all.push_back(origin + ": " + p);
        }
    }
    if (!all.empty()) {
        std::string msg = "invalid scenario:";
        for (const auto& e : all) {
            msg += "\n  - " + e;
        }
        throw ScenarioError(msg);
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError("cannot open scenario file " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path.string());
}

Constellations build_constellations(const Scenario& s)
{
    auto shells_p = s.primary.shells;
    auto shells_s = s.secondary.shells;
    if (s.random_epoch_offsets) {
        std::mt19937_64 rng(s.seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (auto* list : {&shells_p, &shells_s}) {
            for (auto& sh : *list) {
                sh.raan_offset_deg += unit(rng) * 360.0 / sh.num_planes;
                sh.anomaly_offset_deg += unit(rng) * 360.0 / sh.sats_per_plane;
            }
        }
    }
    return {build_walker_delta(shells_p, SystemTag::primary), build_walker_delta(shells_s, SystemTag::secondary)};
}

}  // namespace leocoex
