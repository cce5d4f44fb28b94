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

// Exit-gate checks. Run with no arguments for every criterion or with a
// list of criterion numbers. One line per criterion; exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "leocoex/simulation.hpp"
#include "leocoex/units.hpp"
#include "support.hpp"

namespace {

using namespace leocoex;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c, d);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome constellation_counts()
{
    const auto start = std::chrono::steady_clock::now();
    const std::vector<int> primary_rows{1584, 1584, 172, 348, 720, 2492};
    const std::vector<int> secondary_rows{784, 1296, 1156};
    const auto p = starlink_shells();
    const auto s = kuiper_shells();
    const Constellation pc = build_walker_delta(p, SystemTag::primary);
    const Constellation sc = build_walker_delta(s, SystemTag::secondary);
    auto per_shell = [](const Constellation& c) {
        std::vector<int> n(c.shells().size(), 0);
        for (const auto& el : c.elements()) {
            ++n[el.shell];
        }
        return n;
    };
    const double t = seconds_since(start);
    const bool ok = pc.size() == 6900 && sc.size() == 3236 && per_shell(pc) == primary_rows &&
                    per_shell(sc) == secondary_rows && t < 1.0;
    return {ok, "primary " + std::to_string(pc.size()) + ", secondary " + std::to_string(sc.size()) +
                    fmt(", built in %.3f s", t)};
}

Outcome path_loss_spot_check()
{
    const double v = free_space_path_loss_db(20.0, 550e3);
    return {std::abs(v - 173.28) <= 0.01, fmt("FSPL(20 GHz, 550 km) = %.4f dB", v)};
}

Outcome oracle_equivalence()
{
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240531);
    const int instances = 200;
    int always_feasible = 0;
    int near_optimal = 0;
    int dual_above = 0;
    double worst_ratio = 1.0;
    double worst_dual_gap = 0.0;
    SolverConfig cfg;
    for (int i = 0; i < instances; ++i) {
        const auto inst = testing::random_instance(rng, 6, 3, 4, 1);
        const SolveResult r = solve_handover(inst.table, inst.thresholds, cfg);
        const OracleResult opt = brute_force_oracle(inst.table, inst.thresholds);
        if (is_feasible(inst.table, r.selection, inst.thresholds) &&
            testing::naive_feasible(inst.table, r.selection, inst.thresholds) && r.association.is_valid()) {
            ++always_feasible;
        }
        const double ratio = opt.objective > 0.0 ? r.primal / opt.objective : 1.0;
        worst_ratio = std::min(worst_ratio, ratio);
        if (ratio >= 0.95) {
            ++near_optimal;
        }
        const double slack = 1e-9 * std::max(1.0, opt.objective);
        if (r.best_dual >= opt.objective - slack) {
            ++dual_above;
        } else {
            worst_dual_gap = std::max(worst_dual_gap, opt.objective - r.best_dual);
        }
    }
    const double t = seconds_since(start);
    const bool ok = always_feasible == instances && near_optimal >= 0.9 * instances && dual_above == instances &&
                    t < 120.0;
    std::ostringstream d;
    d << "feasible " << always_feasible << "/" << instances << ", >=95% of optimum " << near_optimal << "/"
      << instances << fmt(" (worst ratio %.4f)", worst_ratio) << ", dual bound >= optimum " << dual_above << "/"
      << instances << fmt(" (largest shortfall %.4g)", worst_dual_gap) << fmt(", %.1f s", t);
    return {ok, d.str()};
}

Scenario small_protected(double avg_db, double max_db)
{
    Scenario s = small_region_scenario();
    s.mode = RunMode::protect;
    s.inr_avg_th_db = avg_db;
    s.inr_max_th_db = max_db;
    return s;
}

double mean_of(const std::vector<double>& v)
{
    double sum = 0.0;
    for (double x : v) {
        sum += x;
    }
    return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

double mean_utilization(const RunResult& r)
{
    std::vector<double> u;
    for (const auto& h : r.handovers) {
        u.push_back(h.utilization);
    }
    return mean_of(u);
}

Outcome strict_zero_violation()
{
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream d;
    for (double th_db : {-12.2, -6.0}) {
        const RunResult r = run_simulation(small_protected(th_db, th_db));
        const double th = db_to_linear(th_db);
        double worst = 0.0;
        for (double v : r.primary_inr.values) {
            worst = std::max(worst, v);
        }
        const bool here = worst <= th && r.window_report.avg_flags == 0 && r.window_report.abs_flags == 0 &&
                          r.window_report.skipped.empty();
        ok = ok && here;
        d << fmt("th %.1f dB: max INR %.2f dB, ", th_db, linear_to_db(worst)) << r.window_report.avg_flags
          << " avg flags, " << r.window_report.abs_flags << " abs flags"
          << fmt(", utilization %.3f; ", mean_utilization(r));
    }
    const double t = seconds_since(start);
    ok = ok && t < 600.0;
    d << fmt("%.1f s", t);
    return {ok, d.str()};
}

Outcome time_average_guarantee()
{
    bool ok = true;
    std::ostringstream d;
    const double inf = std::numeric_limits<double>::infinity();
    for (const auto& [avg_db, max_db] : std::vector<std::pair<double, double>>{{-6.0, inf}, {-12.2, inf}, {-6.0, 0.0}}) {
        const Scenario s = small_protected(avg_db, max_db);
        const RunResult r = run_simulation(s);
        const ProtectionConfig cfg = s.protection();
        const double th = cfg.avg_threshold();
        int checked = 0;
        double worst = 0.0;
        for (const auto& h : r.handovers) {
            if (!h.feasible) {
                continue;
            }
            const std::int64_t end = h.slot + cfg.handover_period_slots;
            if (end > r.primary_inr.num_slots()) {
                continue;
            }
            for (int u = 0; u < r.num_users; ++u) {
                // Independent re-evaluation of the windowed mean from the trace.
                double sum = 0.0;
                for (std::int64_t tau = std::max<std::int64_t>(0, h.slot - cfg.window_past_slots); tau < end; ++tau) {
                    sum += r.primary_inr.at(tau, u);
                }
                const double mean = sum / (cfg.window_past_slots + cfg.handover_period_slots);
                worst = std::max(worst, mean / th);
                ++checked;
            }
        }
        const bool here = checked > 0 && worst <= 1.0 + 1e-9;
        ok = ok && here;
        d << fmt("(%.1f dB, %.1f dB): ", avg_db, max_db) << checked << fmt(" windows, worst mean/threshold %.6f; ", worst);
    }
    return {ok, d.str()};
}

Outcome utilization_trend()
{
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> util;
    double violation_at_inf = 0.0;
    std::ostringstream d;
    for (double max_db : {-6.0, -3.0, 0.0, 3.0, inf}) {
        const RunResult r = run_simulation(small_protected(-6.0, max_db));
        util.push_back(mean_utilization(r));
        if (std::isinf(max_db)) {
            violation_at_inf = mean_of(r.violation_rate);
        }
        d << fmt("%g dB -> %.4f; ", max_db, util.back());
    }
    bool monotone = true;
    for (std::size_t i = 1; i < util.size(); ++i) {
        monotone = monotone && util[i] >= util[i - 1];
    }
    d << fmt("violation at +inf %.4f", violation_at_inf);
    return {monotone && violation_at_inf < 0.25, d.str()};
}

struct BaselineFractions {
    double served = 0.0;    // samples of users with a transmitting server
    double all = 0.0;       // every (user, slot), unserved counted as zero
    double lit = 0.0;       // users whose cell beam is on
};

BaselineFractions baseline_fraction(int beams)
{
    Scenario s = default_scenario();
    s.mode = RunMode::baseline;
    s.beams = beams;
    s.duration_s = 60.0;
    const RunResult r = run_simulation(s);
    const double th = db_to_linear(-12.2);
    BaselineFractions f;
    f.served = fraction_above(r.primary_inr_pool.center, th);
    f.all = fraction_above(r.primary_inr.values, th);
    f.lit = fraction_above(r.primary_inr_pool.center_lit, th);
    return f;
}

Outcome baseline_trend()
{
    const auto start = std::chrono::steady_clock::now();
    const BaselineFractions f8 = baseline_fraction(8);
    const BaselineFractions f32 = baseline_fraction(32);
    const double t = seconds_since(start);
    const bool in_band = f8.served >= 0.10 && f8.served <= 0.30;
    const bool rises = f32.served > f8.served;
    std::ostringstream d;
    d << fmt("above -12.2 dB: N_B=8 %.4f, N_B=32 %.4f (band 0.10..0.30, must rise)", f8.served, f32.served)
      << fmt("; all samples %.4f/%.4f, lit cells %.4f/%.4f", f8.all, f32.all, f8.lit, f32.lit) << fmt("; %.1f s", t);
    return {in_band && rises && t < 1800.0, d.str()};
}

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome invariant_suites()
{
    std::ostringstream d;
    bool ok = true;

    // Association constraints after every assignment, both policies and systems.
    {
        const Scenario s = default_scenario();
        const CellGrid grid = build_grid(s.region);
        const Constellations cons = build_constellations(s);
        int checked = 0;
        bool valid = true;
        for (const Constellation* c : {&cons.primary, &cons.secondary}) {
            for (auto policy : {HandoverPolicy::highest_elevation, HandoverPolicy::max_contact_time}) {
                PolicyConfig pc;
                pc.policy = policy;
                PolicyAssociationSource src(*c, grid, pc);
                for (std::int64_t slot = 0; slot < 600; ++slot) {
                    const AssociationMatrix& a = src.at(slot);
                    valid = valid && a.is_valid() && a.num_clusters() == grid.num_clusters();
                    ++checked;
                }
            }
        }
        for (const auto& h : run_simulation(small_protected(-6.0, 0.0)).handovers) {
            valid = valid && h.secondary.is_valid();
            ++checked;
        }
        ok = ok && valid;
        d << "association " << (valid ? "ok" : "BROKEN") << " (" << checked << " matrices); ";
    }
    // Beam schedule cardinality and coverage.
    {
        bool good = true;
        for (int nb : {8, 16, 24, 32, 127}) {
            std::vector<int> seen(127, 0);
            const int cycle = (127 + nb - 1) / nb;
            for (std::int64_t slot = 0; slot < 127; ++slot) {
                const auto cells = schedule_beams(nb, 127, slot);
                good = good && static_cast<int>(cells.size()) == nb &&
                       std::adjacent_find(cells.begin(), cells.end()) == cells.end();
                if (slot < cycle) {
                    for (int c : cells) {
                        seen[c] = 1;
                    }
                }
            }
            good = good && std::count(seen.begin(), seen.end(), 1) == 127;
        }
        ok = ok && good;
        d << "beam schedule " << (good ? "ok" : "BROKEN") << "; ";
    }
    // Pattern monotonicity over random angle pairs.
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> angle(0.0, 180.0);
        bool good = true;
        for (const auto& p : {satellite_tx_pattern(), user_rx_pattern()}) {
            for (int i = 0; i < 20000; ++i) {
                double a = angle(rng);
                double b = angle(rng);
                if (a > b) {
                    std::swap(a, b);
                }
                good = good && pattern_gain(p, a) >= pattern_gain(p, b) && pattern_gain(p, a) <= p.peak_gain_dbi;
            }
        }
        ok = ok && good;
        d << "pattern " << (good ? "ok" : "BROKEN") << "; ";
    }
    // CDF monotonicity.
    {
        std::mt19937_64 rng(11);
        std::lognormal_distribution<double> inr(-4.0, 2.0);
        std::vector<double> samples(5000);
        for (auto& v : samples) {
            v = inr(rng);
        }
        const auto cdf = empirical_cdf(samples);
        bool good = !cdf.empty() && cdf.back().fraction == 1.0;
        for (std::size_t i = 1; i < cdf.size(); ++i) {
            good = good && cdf[i].value > cdf[i - 1].value && cdf[i].fraction > cdf[i - 1].fraction;
        }
        ok = ok && good;
        d << "cdf " << (good ? "ok" : "BROKEN") << "; ";
    }
    // Determinism: two identical runs export byte-identical files.
    {
        namespace fs = std::filesystem;
        Scenario s = small_protected(-6.0, 0.0);
        s.duration_s = 30.0;
        s.extra_users_per_cell = 1;
        s.link_trace = true;
        const fs::path base = fs::temp_directory_path() / ("leocoex_determinism_" + std::to_string(::getpid()));
        fs::remove_all(base);
        export_results(run_simulation(s), base / "a", false);
        export_results(run_simulation(s), base / "b", false);
        bool same = true;
        int files = 0;
        for (const auto& entry : fs::directory_iterator(base / "a")) {
            const auto other = base / "b" / entry.path().filename();
            same = same && fs::exists(other) && read_file(entry.path()) == read_file(other);
            ++files;
        }
        fs::remove_all(base);
        same = same && files >= 8;
        ok = ok && same;
        d << "determinism " << (same ? "ok" : "BROKEN") << " (" << files << " files)";
    }
    return {ok, d.str()};
}

const std::map<int, std::pair<const char*, std::function<Outcome()>>>& criteria()
{
    static const std::map<int, std::pair<const char*, std::function<Outcome()>>> table{
        {1, {"constellation counts", constellation_counts}},
        {2, {"path-loss spot check", path_loss_spot_check}},
        {3, {"oracle equivalence", oracle_equivalence}},
        {4, {"strict-mode zero violation", strict_zero_violation}},
        {5, {"time-average guarantee", time_average_guarantee}},
        {6, {"monotone utilization trend", utilization_trend}},
        {7, {"baseline interference trend", baseline_trend}},
        {8, {"invariant suites", invariant_suites}},
    };
    return table;
}

}  // namespace

int main(int argc, char** argv)
{
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        selected.push_back(std::atoi(argv[i]));
    }
    if (selected.empty()) {
        for (const auto& [n, _] : criteria()) {
            selected.push_back(n);
        }
    }
    int failed = 0;
    for (int n : selected) {
        const auto it = criteria().find(n);
        if (it == criteria().end()) {
            std::printf("criterion %d: FAIL unknown criterion\n", n);
            ++failed;
            continue;
        }
        Outcome o;
        try {
            o = it->second.second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %d (%s): %s  %s\n", n, it->second.first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed;
}
