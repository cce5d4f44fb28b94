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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "leocoex/simulation.hpp"

namespace {

using namespace leocoex;

double parse_db(const std::string& text)
{
    if (text == "inf" || text == "+inf" || text == ".inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (text == "-inf" || text == "-.inf") {
        return -std::numeric_limits<double>::infinity();
    }
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) {
        throw std::invalid_argument("not a number: " + text);
    }
    return v;
}

std::string db_label(double db)
{
    if (std::isinf(db)) {
        return db > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", db);
    return buf;
}

struct Overrides {
    std::string scenario;
    std::optional<std::string> mode;
    std::optional<std::string> policy_primary;
    std::optional<std::string> policy_secondary;
    std::optional<int> beams;
    std::optional<std::string> inr_avg_th_db;
    std::optional<std::string> inr_max_th_db;
    std::optional<double> th_s;
    std::optional<double> tw_s;
    std::optional<double> duration_s;
    std::optional<std::uint64_t> seed;
    bool small = false;

    void attach(CLI::App& app)
    {
        app.add_option("--scenario", scenario, "YAML scenario file (default: built-in reference)");
        app.add_flag("--small-region", small, "Use the three-cluster preset instead of the reference");
        app.add_option("--mode", mode, "baseline or protected");
        app.add_option("--policy-primary", policy_primary, "Primary handover policy: he or mct");
        app.add_option("--policy-secondary", policy_secondary, "Secondary policy in baseline mode: he or mct");
        app.add_option("--beams", beams, "Beams per satellite");
        app.add_option("--inr-avg-th-db", inr_avg_th_db, "Time-average INR threshold, dB (accepts inf)");
        app.add_option("--inr-max-th-db", inr_max_th_db, "Absolute INR threshold, dB (accepts inf)");
        app.add_option("--th-s", th_s, "Secondary handover period, seconds");
        app.add_option("--tw-s", tw_s, "Past averaging window, seconds");
        app.add_option("--duration-s", duration_s, "Simulated time, seconds");
        app.add_option("--seed", seed, "Scenario seed");
    }

    Scenario build() const
    {
        Scenario s;
        if (!scenario.empty()) {
            s = load_scenario(scenario);
        } else {
            s = small ? small_region_scenario() : default_scenario();
        }
        if (small && !scenario.empty()) {
            s.region = small_region();
        }
        if (mode) s.mode = parse_mode(*mode);
        if (policy_primary) s.primary.policy = parse_policy(*policy_primary);
        if (policy_secondary) s.secondary.policy = parse_policy(*policy_secondary);
        if (beams) s.beams = *beams;
        if (inr_avg_th_db) s.inr_avg_th_db = parse_db(*inr_avg_th_db);
        if (inr_max_th_db) s.inr_max_th_db = parse_db(*inr_max_th_db);
        if (th_s) s.th_s = *th_s;
        if (tw_s) s.tw_s = *tw_s;
        if (duration_s) s.duration_s = *duration_s;
        if (seed) s.seed = *seed;
        s.validate();
        return s;
    }
};

void progress_line(const std::string& msg)
{
    std::cerr << msg << '\n';
}

int run_command(const Overrides& ov, const std::string& out, bool overwrite, bool quiet)
{
    const Scenario s = ov.build();
    RunOptions opts;
    if (!quiet) {
        opts.progress = progress_line;
    }
    const RunResult r = run_simulation(s, opts);
    export_results(r, out, overwrite);
    std::cout << summary_json(r) << '\n';
    return 0;
}

struct SweepPoint {
    double avg_db;
    double max_db;
    double th_s;
};

std::vector<SweepPoint> sweep_grid(const std::string& name, double th_s)
{
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<SweepPoint> pts;
    if (name == "table4") {
        pts.push_back({-12.2, -12.2, th_s});
        for (double avg : {-12.2, -6.0}) {
            for (double mx : {-6.0, -3.0, 0.0, 3.0, inf}) {
                pts.push_back({avg, mx, th_s});
            }
        }
    } else if (name == "handover") {
        for (double mx : {-6.0, -3.0, 0.0, 3.0, inf}) {
            for (double th : {5.0, 10.0, 15.0, 20.0, 30.0}) {
                pts.push_back({-6.0, mx, th});
            }
        }
    } else {
        throw std::invalid_argument("unknown sweep grid '" + name + "' (expected table4 or handover)");
    }
    return pts;
}

int sweep_command(const Overrides& ov, const std::string& grid, const std::string& out, bool overwrite, bool quiet)
{
    namespace fs = std::filesystem;
    const Scenario base = ov.build();
    if (fs::exists(out) && !overwrite) {
        throw std::runtime_error("output directory " + out + " exists; pass --overwrite to replace it");
    }
    fs::create_directories(out);
    std::ofstream table(fs::path(out) / "sweep_summary.csv");
    table << "inr_avg_th_db,inr_max_th_db,th_s,mean_utilization,mean_violation_rate,run_dir\n";
    for (const auto& p : sweep_grid(grid, base.th_s)) {
        Scenario s = base;
        s.mode = RunMode::protect;
        s.inr_avg_th_db = p.avg_db;
        s.inr_max_th_db = p.max_db;
        s.th_s = p.th_s;
        s.validate();
        const std::string name = "avg" + db_label(p.avg_db) + "_max" + db_label(p.max_db) + "_th" + db_label(p.th_s);
        if (!quiet) {
            std::cerr << "sweep point " << name << '\n';
        }
        const RunResult r = run_simulation(s);
        export_results(r, fs::path(out) / name, true);
        double util = 0.0;
        for (const auto& h : r.handovers) {
            util += h.utilization;
        }
        util = r.handovers.empty() ? 0.0 : util / static_cast<double>(r.handovers.size());
        double viol = 0.0;
        for (double v : r.violation_rate) {
            viol += v;
        }
        viol = r.violation_rate.empty() ? 0.0 : viol / static_cast<double>(r.violation_rate.size());
        char line[256];
        std::snprintf(line, sizeof line, "%s,%s,%g,%.10g,%.10g,", db_label(p.avg_db).c_str(),
                      db_label(p.max_db).c_str(), p.th_s, util, viol);
        table << line << name << '\n';
    }
    return 0;
}

int positions_command(const Overrides& ov, const std::string& system, std::int64_t start, std::int64_t slots,
                      std::int64_t stride, const std::string& out)
{
    const Scenario s = ov.build();
    const Constellations cons = build_constellations(s);
    std::ofstream file;
    if (!out.empty()) {
        file.open(out);
        if (!file) {
            throw std::runtime_error("cannot write " + out);
        }
    }
    std::ostream& os = out.empty() ? std::cout : file;
    os << "time_s,sat_id,system,x_m,y_m,z_m\n";
    char buf[160];
    for (std::int64_t k = 0; k < slots; ++k) {
        const std::int64_t slot = start + k * stride;
        for (const Constellation* c : {&cons.primary, &cons.secondary}) {
            if (system != "both" && system != to_string(c->tag())) {
                continue;
            }
            for (const auto& st : propagate_ecef(*c, slot, s.slot_duration_s, s.propagation())) {
                std::snprintf(buf, sizeof buf, "%.3f,%d,%s,%.3f,%.3f,%.3f\n",
                              static_cast<double>(slot) * s.slot_duration_s, st.satellite_id,
                              std::string(to_string(st.system)).c_str(), st.position.x, st.position.y, st.position.z);
                os << buf;
            }
        }
    }
    return 0;
}

int pattern_command(const Overrides& ov, const std::string& which, double max_deg, double step_deg)
{
    const Scenario s = ov.build();
    if (which != "tx" && which != "rx") {
        throw std::invalid_argument("--antenna must be tx or rx");
    }
    if (!(step_deg > 0.0)) {
        throw std::invalid_argument("--step-deg must be positive");
    }
    const AntennaPattern& p = which == "tx" ? s.tx : s.rx;
    std::cout << "theta_deg,gain_dbi\n";
    char buf[64];
    const auto n = static_cast<long>(std::floor(max_deg / step_deg + 1e-9));
    for (long i = 0; i <= n; ++i) {
        const double theta = static_cast<double>(i) * step_deg;
        std::snprintf(buf, sizeof buf, "%.4f,%.6f\n", theta, pattern_gain(p, theta));
        std::cout << buf;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"LEO spectrum coexistence simulator"};
    app.require_subcommand(0, 1);
    bool print_default = false;
    app.add_flag("--print-default-scenario", print_default, "Print the commented reference scenario and exit");

    Overrides run_ov;
    std::string run_out = "results";
    bool run_overwrite = false;
    bool run_quiet = false;
    CLI::App* run = app.add_subcommand("run", "Run one simulation and export its results");
    run_ov.attach(*run);
    run->add_option("--out", run_out, "Output directory");
    run->add_flag("--overwrite", run_overwrite, "Allow writing into an existing output directory");
    run->add_flag("--quiet", run_quiet, "Suppress progress lines");

    Overrides sweep_ov;
    std::string sweep_grid_name = "table4";
    std::string sweep_out = "sweep";
    bool sweep_overwrite = false;
    bool sweep_quiet = false;
    CLI::App* sweep = app.add_subcommand("sweep", "Protected-mode threshold or handover-period grid");
    sweep_ov.attach(*sweep);
    sweep->add_option("--grid", sweep_grid_name, "table4 or handover");
    sweep->add_option("--out", sweep_out, "Output directory; one sub-directory per grid point");
    sweep->add_flag("--overwrite", sweep_overwrite, "Allow writing into an existing output directory");
    sweep->add_flag("--quiet", sweep_quiet, "Suppress progress lines");

    Overrides pos_ov;
    std::string pos_system = "both";
    std::int64_t pos_start = 0;
    std::int64_t pos_slots = 1;
    std::int64_t pos_stride = 1;
    std::string pos_out;
    CLI::App* pos = app.add_subcommand("positions", "Dump propagated satellite positions as CSV");
    pos_ov.attach(*pos);
    pos->add_option("--system", pos_system, "primary, secondary or both")
        ->check(CLI::IsMember({"primary", "secondary", "both"}));
    pos->add_option("--start-slot", pos_start, "First slot")->check(CLI::NonNegativeNumber);
    pos->add_option("--slots", pos_slots, "Number of samples")->check(CLI::PositiveNumber);
    pos->add_option("--stride", pos_stride, "Slots between samples")->check(CLI::PositiveNumber);
    pos->add_option("--out", pos_out, "CSV file (default: stdout)");

    Overrides pat_ov;
    std::string pat_which = "tx";
    double pat_max = 90.0;
    double pat_step = 0.1;
    CLI::App* pat = app.add_subcommand("pattern", "Dump antenna gain samples as CSV");
    pat_ov.attach(*pat);
    pat->add_option("--antenna", pat_which, "tx or rx");
    pat->add_option("--max-deg", pat_max, "Largest off-boresight angle");
    pat->add_option("--step-deg", pat_step, "Sample spacing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (print_default) {
            std::cout << default_scenario_yaml();
            return 0;
        }
        if (run->parsed()) {
            return run_command(run_ov, run_out, run_overwrite, run_quiet);
        }
        if (sweep->parsed()) {
            return sweep_command(sweep_ov, sweep_grid_name, sweep_out, sweep_overwrite, sweep_quiet);
        }
        if (pos->parsed()) {
            return positions_command(pos_ov, pos_system, pos_start, pos_slots, pos_stride, pos_out);
        }
        if (pat->parsed()) {
            return pattern_command(pat_ov, pat_which, pat_max, pat_step);
        }
        std::cout << app.help();
        return 0;
    } catch (const ScenarioError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
