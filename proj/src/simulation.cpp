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

#include "leocoex/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "leocoex/engine.hpp"
#include "leocoex/units.hpp"
#include "json.hpp"

namespace leocoex {

namespace {

struct LiveBeams {
    int cluster = 0;
    int satellite = 0;
    BeamRays rays;
};

std::vector<LiveBeams> live_beams(const InterferenceEngine& engine, const AssociationMatrix& assoc,
                                  std::span<const Vec3> positions, std::span<const int> active)
{
    std::vector<LiveBeams> out;
    for (int n : engine.grid().priority_order()) {
        const int s = assoc.serving[n];
        if (s != kUnserved && engine.transmitting(assoc.system, positions[s], n)) {
            out.push_back({n, s, engine.beam_rays(positions[s], n, active)});
        }
    }
    return out;
}

// SNR of a user served by the beam on its own cell.
double user_snr(const InterferenceEngine& engine, SystemTag system, const Vec3& server, const GroundUser& user)
{
    const Vec3& centre = engine.grid().cluster(user.cluster).cells[user.cell].position;
    const double c = dot(InterferenceKernel::ray(server, centre).dir, InterferenceKernel::ray(server, user.position).dir);
    return engine.kernel().snr(system, c);
}

class SlotAccountant {
public:
    SlotAccountant(const Scenario& sc, const InterferenceEngine& engine, std::span<const GroundUser> users,
                   RunResult& out)
        : sc_(sc), engine_(engine), users_(users), out_(out), history_(out.num_users, sc.protection().window_past_slots)
    {
    }

    const InterferenceHistory& history() const { return history_; }

    void account(std::int64_t slot, const AssociationMatrix& prim, const AssociationMatrix& sec,
                 std::span<const Vec3> ppos, std::span<const Vec3> spos, std::span<const int> active)
    {
        const CellGrid& grid = engine_.grid();
        const double time_s = static_cast<double>(slot) * sc_.slot_duration_s;
        std::vector<char> lit(grid.cells_per_cluster(), 0);
        for (int c : active) {
            lit[c] = 1;
        }
        const ServerDirections pdir = engine_.server_directions(users_, prim, ppos);
        const ServerDirections sdir = engine_.server_directions(users_, sec, spos);
        const auto live_s = live_beams(engine_, sec, spos, active);
        const auto live_p = live_beams(engine_, prim, ppos, active);

        std::vector<double> row(out_.num_users, 0.0);
        for (std::size_t i = 0; i < users_.size(); ++i) {
            const GroundUser& u = users_[i];
            if (pdir.has[i]) {
                // Summed in cluster priority order, like the solver's loads.
                double inr = 0.0;
                for (const auto& b : live_s) {
                    inr += engine_.sat_cluster(SystemTag::secondary, b.rays, u, pdir.dir[i], spos[b.satellite]);
                }
                if (u.representative) {
                    row[u.id] = inr;
                }
                record(SystemTag::primary, u, prim.serving[u.cluster], ppos, inr, lit[u.cell], time_s,
                       out_.primary_inr_pool, out_.primary_sinr_pool);
            }
            if (sdir.has[i]) {
                double inr = 0.0;
                for (const auto& b : live_p) {
                    inr += engine_.sat_cluster(SystemTag::primary, b.rays, u, sdir.dir[i], ppos[b.satellite]);
                }
                record(SystemTag::secondary, u, sec.serving[u.cluster], spos, inr, lit[u.cell], time_s,
                       out_.secondary_inr_pool, out_.secondary_sinr_pool);
            }
        }
        history_.push(row);
        out_.primary_inr.append(row);
        out_.violation_rate.push_back(violation_rate(row, sc_.inr_avg_th_db));
    }

private:
    void record(SystemTag system, const GroundUser& u, int server, std::span<const Vec3> positions, double inr,
                bool lit, double time_s, SamplePools& inr_pool, SamplePools& sinr_pool)
    {
        (u.representative ? inr_pool.center : inr_pool.extra).push_back(inr);
        if (u.representative && lit) {
            inr_pool.center_lit.push_back(inr);
        }
        if (!lit && !sc_.link_trace) {
            return;
        }
        const double snr = user_snr(engine_, system, positions[server], u);
        const double sinr = link_sinr(snr, inr);
        if (lit) {
            (u.representative ? sinr_pool.center : sinr_pool.extra).push_back(sinr);
        }
        if (sc_.link_trace) {
            out_.link_rows.push_back({time_s, u.id, system, snr, inr, sinr});
        }
    }

    const Scenario& sc_;
    const InterferenceEngine& engine_;
    std::span<const GroundUser> users_;
    RunResult& out_;
    InterferenceHistory history_;
};

}  // namespace

RunResult run_simulation(const Scenario& sc, const RunOptions& options)
{
    sc.validate();
    RunResult res;
    res.scenario = sc;

    const CellGrid grid = build_grid(sc.region);
    const InterferenceEngine engine(grid, sc.link());
    const Constellations cons = build_constellations(sc);
    const std::vector<GroundUser> users = make_users(grid, sc.extra_users_per_cell, sc.seed);
    const ProtectionConfig prot = sc.protection();
    const int period = prot.handover_period_slots;
    const std::int64_t total = sc.num_slots();
    const PropagationOptions prop = sc.propagation();

    res.num_slots = total;
    res.num_users = grid.num_cells();
    res.primary_inr.num_users = res.num_users;

    std::unique_ptr<AssociationSource> owned_primary;
    AssociationSource* primary_src = options.primary_source;
    if (!primary_src) {
        if (!sc.primary.association_trace.empty()) {
            std::ifstream in(sc.primary.association_trace);
            if (!in) {
                throw std::runtime_error("cannot open association trace " + sc.primary.association_trace);
            }
            owned_primary = std::make_unique<TraceAssociationSource>(in, SystemTag::primary, grid.num_clusters(),
                                                                     sc.slot_duration_s);
        } else {
            PolicyConfig pc;
            pc.policy = sc.primary.policy;
            pc.eps_min_deg = sc.primary.eps_min_deg;
            pc.handover_slots = static_cast<int>(std::llround(sc.primary.handover_s / sc.slot_duration_s));
            pc.slot_duration_s = sc.slot_duration_s;
            pc.propagation = prop;
            owned_primary = std::make_unique<PolicyAssociationSource>(cons.primary, grid, pc);
        }
        primary_src = owned_primary.get();
    }
    std::unique_ptr<PolicyAssociationSource> secondary_src;
    if (sc.mode == RunMode::baseline) {
        PolicyConfig pc;
        pc.policy = sc.secondary.policy;
        pc.eps_min_deg = sc.secondary.eps_min_deg;
        pc.handover_slots = period;
        pc.slot_duration_s = sc.slot_duration_s;
        pc.propagation = prop;
        secondary_src = std::make_unique<PolicyAssociationSource>(cons.secondary, grid, pc);
    }

    SlotAccountant accountant(sc, engine, users, res);
    std::ostringstream assoc_rows;
    AssociationMatrix prev_p;
    AssociationMatrix prev_s;
    std::vector<std::int64_t> handover_slots;

    for (std::int64_t t0 = 0; t0 < total; t0 += period) {
        const WindowState w = build_window(cons.primary, cons.secondary, *primary_src, t0, period,
                                           sc.slot_duration_s, sc.beams, grid.cells_per_cluster(), prop);
        HandoverRecord rec;
        rec.slot = t0;
        AssociationMatrix fixed(SystemTag::secondary, grid.num_clusters());
        if (sc.mode == RunMode::protect) {
            const CoeffTable table = build_coefficients(engine, w, users);
            rec.worst_past_sum = accountant.history().max_window_sum();
            const Thresholds th{effective_avg_threshold(rec.worst_past_sum, prot), prot.max_threshold()};
            const SolveResult sr = solve_handover(table, th, sc.solver);
            rec.effective_avg_threshold = th.avg;
            rec.max_threshold = th.max;
            rec.feasible = sr.feasible;
            rec.best_dual = sr.best_dual;
            rec.primal = sr.primal;
            rec.iterations = sr.iterations;
            rec.converged = sr.converged;
            rec.outage = sr.outage;
            rec.candidates = static_cast<int>(table.candidates.size());
            for (const auto& list : table.by_cluster) {
                rec.candidates_per_cluster.push_back(static_cast<int>(list.size()));
            }
            fixed = sr.association;
        } else {
            fixed = secondary_src->at(t0);
            std::vector<SatelliteState> states(w.secondary[0].size());
            for (std::size_t i = 0; i < states.size(); ++i) {
                states[i] = {static_cast<int>(i), w.secondary[0][i], SystemTag::secondary};
            }
            const OverheadSets sets = overhead_sets(states, grid, sc.secondary.eps_min_deg);
            for (const auto& list : sets.per_cluster) {
                rec.candidates_per_cluster.push_back(static_cast<int>(list.size()));
                rec.candidates += static_cast<int>(list.size());
            }
        }
        rec.secondary = fixed;
        rec.utilization = utilization(fixed);
        handover_slots.push_back(t0);
        if (options.progress) {
            std::ostringstream msg;
            msg << "t=" << static_cast<double>(t0) * sc.slot_duration_s << "s served " << fixed.served_count() << "/"
                << grid.num_clusters() << " candidates " << rec.candidates;
            options.progress(msg.str());
        }
        res.handovers.push_back(std::move(rec));

        const std::int64_t end = std::min<std::int64_t>(t0 + period, total);
        for (std::int64_t slot = t0; slot < end; ++slot) {
            const int k = static_cast<int>(slot - t0);
            const AssociationMatrix& sec = sc.mode == RunMode::protect ? fixed : secondary_src->at(slot);
            const AssociationMatrix& prim = w.primary_assoc[k];
            const double time_s = static_cast<double>(slot) * sc.slot_duration_s;
            write_association_rows(assoc_rows, slot == 0 ? nullptr : &prev_p, prim, time_s);
            write_association_rows(assoc_rows, slot == 0 ? nullptr : &prev_s, sec, time_s);
            prev_p = prim;
            prev_s = sec;
            accountant.account(slot, prim, sec, w.primary[k], w.secondary[k], w.active_cells[k]);
        }
    }
    if (total > 1) {
        // Restate the final state so a replayed trace covers the whole run.
        const double last = static_cast<double>(total - 1) * sc.slot_duration_s;
        write_association_rows(assoc_rows, nullptr, prev_p, last);
        write_association_rows(assoc_rows, nullptr, prev_s, last);
    }
    res.association_csv = assoc_rows.str();
    res.window_report = verify_window(res.primary_inr, handover_slots, prot);
    return res;
}

namespace {

using nlohmann::json;

std::string num(double v)
{
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string time_str(std::int64_t slot, double dt)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", static_cast<double>(slot) * dt);
    return buf;
}

// JSON has no infinity; thresholds that are off are written as strings.
json json_num(double v)
{
    if (std::isfinite(v)) {
        return v;
    }
    return num(v);
}

json shells_json(const std::vector<ShellParams>& shells)
{
    json out = json::array();
    for (const auto& s : shells) {
        out.push_back({{"altitude_km", s.altitude_km},
                       {"inclination_deg", s.inclination_deg},
                       {"planes", s.num_planes},
                       {"sats_per_plane", s.sats_per_plane},
                       {"phasing", s.phasing_factor},
                       {"raan_offset_deg", s.raan_offset_deg},
                       {"anomaly_offset_deg", s.anomaly_offset_deg}});
    }
    return out;
}

json system_json(const SystemConfig& c)
{
    json j{{"shells", shells_json(c.shells)},
           {"policy", std::string(to_string(c.policy))},
           {"eps_min_deg", c.eps_min_deg},
           {"max_eirp_dbw_hz", c.max_eirp_dbw_hz},
           {"handover_s", c.handover_s}};
    if (!c.association_trace.empty()) {
        j["association_trace"] = c.association_trace;
    }
    return j;
}

json antenna_json(const AntennaPattern& a)
{
    return {{"peak_gain_dbi", a.peak_gain_dbi},
            {"beamwidth_3db_deg", a.beamwidth_3db_deg},
            {"sidelobe_floor_db", a.sidelobe_floor_db},
            {"far_floor_dbi", a.far_floor_dbi}};
}

json scenario_object(const Scenario& s)
{
    json clusters = json::array();
    for (const auto& c : s.region.clusters) {
        json cj{{"priority", c.priority}};
        if (c.lattice) {
            cj["lattice"] = {c.lattice->q, c.lattice->r};
        }
        if (c.center) {
            cj["center"] = {c.center->lat_deg, c.center->lon_deg};
        }
        clusters.push_back(cj);
    }
    return {{"seed", s.seed},
            {"mode", std::string(to_string(s.mode))},
            {"slot_duration_s", s.slot_duration_s},
            {"duration_s", s.duration_s},
            {"beams", s.beams},
            {"allow_nonstandard_beams", s.allow_nonstandard_beams},
            {"earth_rotation", s.earth_rotation},
            {"random_epoch_offsets", s.random_epoch_offsets},
            {"primary", system_json(s.primary)},
            {"secondary", system_json(s.secondary)},
            {"antenna", {{"tx", antenna_json(s.tx)}, {"rx", antenna_json(s.rx)}}},
            {"link",
             {{"carrier_ghz", s.carrier_ghz},
              {"noise_psd_dbm_hz", s.noise_psd_dbm_hz},
              {"noise_figure_db", s.noise_figure_db}}},
            {"region",
             {{"origin", {s.region.origin.lat_deg, s.region.origin.lon_deg}},
              {"cell_radius_km", s.region.cell_radius_km},
              {"rings", s.region.rings},
              {"clusters", clusters}}},
            {"protection",
             {{"inr_avg_th_db", json_num(s.inr_avg_th_db)},
              {"inr_max_th_db", json_num(s.inr_max_th_db)},
              {"th_s", s.th_s},
              {"tw_s", s.tw_s}}},
            {"solver",
             {{"max_iterations", s.solver.max_iterations},
              {"step_a", s.solver.step_a},
              {"step_b", s.solver.step_b},
              {"tolerance", s.solver.tolerance},
              {"lambda_scale", s.solver.lambda_scale},
              {"mu_scale", s.solver.mu_scale},
              {"nu_scale", s.solver.nu_scale},
              {"update_rule", std::string(to_string(s.solver.rule))},
              {"local_search", s.solver.local_search}}},
            {"users", {{"extra_per_cell", s.extra_users_per_cell}}},
            {"output", {{"link_trace", s.link_trace}}}};
}

double mean(std::span<const double> v)
{
    if (v.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (double x : v) {
        sum += x;
    }
    return sum / static_cast<double>(v.size());
}

void write_cdf(std::ostream& out, std::string_view system, std::string_view pool, std::span<const double> samples)
{
    if (samples.empty()) {
        return;
    }
    for (const auto& p : empirical_cdf(std::vector<double>(samples.begin(), samples.end()))) {
        out << system << ',' << pool << ',' << num(linear_to_db(p.value)) << ',' << num(p.fraction) << '\n';
    }
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

json solver_records(const RunResult& r)
{
    json out = json::array();
    const double dt = r.scenario.slot_duration_s;
    for (const auto& h : r.handovers) {
        json j{{"slot", h.slot},
               {"time_s", static_cast<double>(h.slot) * dt},
               {"chosen_satellite", h.secondary.serving},
               {"utilization", h.utilization},
               {"candidates", h.candidates},
               {"candidates_per_cluster", h.candidates_per_cluster}};
        if (r.scenario.mode == RunMode::protect) {
            j["worst_past_sum"] = h.worst_past_sum;
            j["effective_avg_threshold_db"] = json_num(linear_to_db(h.effective_avg_threshold));
            j["max_threshold_db"] = json_num(linear_to_db(h.max_threshold));
            j["feasible"] = h.feasible;
            j["dual_bound"] = h.best_dual;
            j["primal"] = h.primal;
            j["iterations"] = h.iterations;
            j["converged"] = h.converged;
            j["outage_clusters"] = h.outage;
        }
        out.push_back(j);
    }
    return out;
}

}  // namespace

std::string scenario_json(const Scenario& s)
{
    return scenario_object(s).dump(2);
}

std::string summary_json(const RunResult& r)
{
    const Scenario& s = r.scenario;
    std::vector<double> util;
    int infeasible = 0;
    for (const auto& h : r.handovers) {
        util.push_back(h.utilization);
        infeasible += h.feasible ? 0 : 1;
    }
    const auto per_user = per_user_violation(r.primary_inr, s.inr_avg_th_db);
    const double worst_user = per_user.empty() ? 0.0 : *std::max_element(per_user.begin(), per_user.end());
    json j{{"scenario", scenario_object(s)},
           {"seed", s.seed},
           {"mode", std::string(to_string(s.mode))},
           {"num_slots", r.num_slots},
           {"num_protected_users", r.num_users},
           {"num_handovers", r.handovers.size()},
           {"mean_violation_rate", mean(r.violation_rate)},
           {"max_violation_rate",
            r.violation_rate.empty() ? 0.0 : *std::max_element(r.violation_rate.begin(), r.violation_rate.end())},
           {"worst_user_violation_fraction", worst_user},
           {"mean_utilization", mean(util)},
           {"infeasible_handovers", infeasible},
           {"window_checks", r.window_report.checks.size()},
           {"window_avg_flags", r.window_report.avg_flags},
           {"window_max_flags", r.window_report.abs_flags},
           {"window_skipped_handovers", r.window_report.skipped},
           {"history_before_start", "zero"}};
    return j.dump(2);
}

void export_results(const RunResult& r, const std::filesystem::path& out_dir, bool overwrite)
{
    namespace fs = std::filesystem;
    if (fs::exists(out_dir) && !overwrite) {
        throw std::runtime_error("output directory " + out_dir.string() + " exists; pass --overwrite to replace it");
    }
    fs::create_directories(out_dir);
    const Scenario& s = r.scenario;
    const double dt = s.slot_duration_s;

    write_file(out_dir / "association_trace.csv", "time_s,system,cluster,sat_id\n" + r.association_csv);

    {
        std::ostringstream o;
        o << "handover_t,user_id,avg_inr_db,max_inr_db,avg_violated,abs_violated\n";
        for (const auto& c : r.window_report.checks) {
            o << time_str(c.handover_slot, dt) << ',' << c.user << ',' << num(linear_to_db(c.mean_inr)) << ','
              << num(linear_to_db(c.max_inr)) << ',' << (c.avg_violated ? 1 : 0) << ',' << (c.abs_violated ? 1 : 0)
              << '\n';
        }
        write_file(out_dir / "violation_report.csv", o.str());
    }
    {
        std::ostringstream o;
        o << "time_s,violation_rate\n";
        for (std::size_t t = 0; t < r.violation_rate.size(); ++t) {
            o << time_str(static_cast<std::int64_t>(t), dt) << ',' << num(r.violation_rate[t]) << '\n';
        }
        write_file(out_dir / "violation_rate.csv", o.str());
    }
    {
        std::ostringstream o;
        o << "handover_t,utilization,served_clusters\n";
        for (const auto& h : r.handovers) {
            o << time_str(h.slot, dt) << ',' << num(h.utilization) << ',' << h.secondary.served_count() << '\n';
        }
        write_file(out_dir / "utilization.csv", o.str());
    }
    {
        std::ostringstream o;
        o << "system,pool,inr_db,cdf\n";
        write_cdf(o, "primary", "center", r.primary_inr_pool.center);
        write_cdf(o, "primary", "extra", r.primary_inr_pool.extra);
        write_cdf(o, "primary", "center_lit", r.primary_inr_pool.center_lit);
        write_cdf(o, "secondary", "center", r.secondary_inr_pool.center);
        write_cdf(o, "secondary", "extra", r.secondary_inr_pool.extra);
        write_cdf(o, "secondary", "center_lit", r.secondary_inr_pool.center_lit);
        write_file(out_dir / "inr_cdf.csv", o.str());
    }
    {
        std::ostringstream o;
        o << "system,pool,sinr_db,cdf\n";
        write_cdf(o, "primary", "center", r.primary_sinr_pool.center);
        write_cdf(o, "primary", "extra", r.primary_sinr_pool.extra);
        write_cdf(o, "secondary", "center", r.secondary_sinr_pool.center);
        write_cdf(o, "secondary", "extra", r.secondary_sinr_pool.extra);
        write_file(out_dir / "sinr_cdf.csv", o.str());
    }
    {
        std::ostringstream o;
        o << "user_id,violation_fraction\n";
        const auto per_user = per_user_violation(r.primary_inr, s.inr_avg_th_db);
        for (std::size_t u = 0; u < per_user.size(); ++u) {
            o << u << ',' << num(per_user[u]) << '\n';
        }
        write_file(out_dir / "per_user_violation.csv", o.str());
    }
    if (s.link_trace) {
        std::ostringstream o;
        o << "time_s,user_id,system,snr_db,inr_db,sinr_db\n";
        for (const auto& row : r.link_rows) {
            char t[32];
            std::snprintf(t, sizeof t, "%.3f", row.time_s);
            o << t << ',' << row.user << ',' << to_string(row.system) << ',' << num(linear_to_db(row.snr)) << ','
              << num(linear_to_db(row.inr)) << ',' << num(linear_to_db(row.sinr)) << '\n';
        }
        write_file(out_dir / "link_trace.csv", o.str());
    }
    write_file(out_dir / "solver_diagnostics.json", solver_records(r).dump(2) + "\n");
    write_file(out_dir / "summary.json", summary_json(r) + "\n");
}

}  // namespace leocoex
