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

#include "leocoex/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace leocoex {

void CoeffTable::finalize()
{
    by_cluster.assign(num_clusters, {});
    satellites.clear();
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        auto& c = candidates[k];
        if (c.cluster < 0 || c.cluster >= num_clusters) {
            throw std::invalid_argument("candidate refers to an unknown cluster");
        }
        if (static_cast<int>(c.avg.size()) != num_users ||
            c.per_slot.size() != static_cast<std::size_t>(num_users) * num_slots) {
            throw std::invalid_argument("candidate coefficient sizes do not match the table");
        }
        c.worst_avg = 0.0;
        for (double v : c.avg) {
            c.worst_avg = std::max(c.worst_avg, v);
        }
        c.worst_slot = 0.0;
        for (double v : c.per_slot) {
            c.worst_slot = std::max(c.worst_slot, v);
        }
        by_cluster[c.cluster].push_back(static_cast<int>(k));
        satellites.push_back(c.satellite);
    }
    for (auto& list : by_cluster) {
        std::stable_sort(list.begin(), list.end(),
                         [&](int a, int b) { return candidates[a].satellite < candidates[b].satellite; });
    }
    std::sort(satellites.begin(), satellites.end());
    satellites.erase(std::unique(satellites.begin(), satellites.end()), satellites.end());
    sat_index.resize(candidates.size());
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        sat_index[k] = static_cast<int>(
            std::lower_bound(satellites.begin(), satellites.end(), candidates[k].satellite) - satellites.begin());
    }
    if (priority_order.empty()) {
        priority_order.resize(num_clusters);
        std::iota(priority_order.begin(), priority_order.end(), 0);
    }
}

CoeffTable build_coefficients(const InterferenceEngine& engine, const WindowState& window,
                              std::span<const GroundUser> users)
{
    const CellGrid& grid = engine.grid();
    const int num_users = grid.num_cells();
    if (static_cast<int>(users.size()) < num_users) {
        throw std::invalid_argument("user list must start with one representative per cell");
    }
    const auto protected_users = users.first(num_users);
    const int th = window.num_slots;

    CoeffTable table;
    table.num_clusters = grid.num_clusters();
    table.num_users = num_users;
    table.num_slots = th;
    table.priority_order = grid.priority_order();

    std::vector<SatelliteState> states(window.secondary[0].size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        states[i] = {static_cast<int>(i), window.secondary[0][i], SystemTag::secondary};
    }
    const OverheadSets sets = overhead_sets(states, grid, engine.eps_min_deg(SystemTag::secondary));
    for (int n = 0; n < grid.num_clusters(); ++n) {
        for (int m : sets.per_cluster[n]) {
            Candidate c;
            c.satellite = m;
            c.cluster = n;
            c.avg.assign(num_users, 0.0);
            c.per_slot.assign(static_cast<std::size_t>(num_users) * th, 0.0);
            table.candidates.push_back(std::move(c));
        }
    }

    const double snr = engine.kernel().snr(SystemTag::secondary, 1.0);
    for (int tau = 0; tau < th; ++tau) {
        const auto& prim_pos = window.primary[tau];
        const auto& sec_pos = window.secondary[tau];
        const auto& prim_assoc = window.primary_assoc[tau];
        const auto& active = window.active_cells[tau];
        const ServerDirections dirs = engine.server_directions(protected_users, prim_assoc, prim_pos);

        // Primary beams that hit secondary users this slot.
        std::vector<int> live_primary;
        std::vector<BeamRays> primary_rays(grid.num_clusters());
        for (int n : grid.priority_order()) {
            const int p = prim_assoc.serving[n];
            if (p != kUnserved && engine.transmitting(SystemTag::primary, prim_pos[p], n)) {
                live_primary.push_back(n);
                primary_rays[n] = engine.beam_rays(prim_pos[p], n, active);
            }
        }

        for (auto& c : table.candidates) {
            const Vec3& pos = sec_pos[c.satellite];
            if (!engine.transmitting(SystemTag::secondary, pos, c.cluster)) {
                continue;
            }
            const BeamRays rays = engine.beam_rays(pos, c.cluster, active);
            double* row = c.per_slot.data() + static_cast<std::size_t>(tau) * num_users;
            for (int u = 0; u < num_users; ++u) {
                if (dirs.has[u]) {
                    row[u] = engine.sat_cluster(SystemTag::secondary, rays, protected_users[u], dirs.dir[u], pos);
                }
            }
            for (int cell : active) {
                const GroundUser& v = users[grid.cell_id(c.cluster, cell)];
                const Vec3 dir = InterferenceKernel::ray(v.position, pos).dir;
                double inr = 0.0;
                for (int n : live_primary) {
                    const Vec3& p = prim_pos[prim_assoc.serving[n]];
                    inr += engine.sat_cluster(SystemTag::primary, primary_rays[n], v, dir, p);
                }
                c.capacity += std::log2(1.0 + link_sinr(snr, inr));
            }
        }
    }
    for (auto& c : table.candidates) {
        for (int u = 0; u < num_users; ++u) {
            double sum = 0.0;
            for (int tau = 0; tau < th; ++tau) {
                sum += c.per_slot[static_cast<std::size_t>(tau) * num_users + u];
            }
            c.avg[u] = sum / th;
        }
    }
    table.finalize();
    return table;
}

UpdateRule parse_update_rule(std::string_view name)
{
    if (name == "ascent") {
        return UpdateRule::ascent;
    }
    if (name == "descent") {
        return UpdateRule::descent;
    }
    throw std::invalid_argument("unknown multiplier update rule '" + std::string(name) + "'");
}

std::string_view to_string(UpdateRule rule)
{
    return rule == UpdateRule::ascent ? "ascent" : "descent";
}

void SolverConfig::validate() const
{
    if (max_iterations < 0) {
        throw std::invalid_argument("solver iteration count must be non-negative");
    }
    if (!(step_a > 0.0) || !(step_b >= 0.0)) {
        throw std::invalid_argument("step schedule needs a > 0 and b >= 0");
    }
    if (!(lambda_scale >= 0.0) || !(mu_scale >= 0.0) || !(nu_scale >= 0.0)) {
        throw std::invalid_argument("step scales must be non-negative");
    }
    if (!(tolerance >= 0.0)) {
        throw std::invalid_argument("dual tolerance must be non-negative");
    }
    if (price_ladder < 0 || price_ladder > 30) {
        throw std::invalid_argument("price ladder must lie in [0, 30]");
    }
}

double candidate_score(const CoeffTable& table, int candidate, const Multipliers& m)
{
    const Candidate& c = table.candidates[candidate];
    double s = c.capacity;
    if (m.lambda != 0.0) {
        s -= m.lambda * c.worst_avg;
    }
    if (m.mu != 0.0) {
        s -= m.mu * c.worst_slot;
    }
    if (!m.nu.empty()) {
        s -= m.nu[table.sat_index[candidate]];
    }
    return s;
}

int cluster_subproblem(const CoeffTable& table, int cluster, const Multipliers& m)
{
    int best = -1;
    double best_score = 0.0;
    // by_cluster is ordered by satellite id, so ties go to the lowest id.
    for (int k : table.by_cluster.at(cluster)) {
        const double s = candidate_score(table, k, m);
        if (s > best_score) {
            best = k;
            best_score = s;
        }
    }
    return best;
}

double primal_objective(const CoeffTable& table, const Selection& x)
{
    double total = 0.0;
    for (int k : x) {
        if (k >= 0) {
            total += table.candidates[k].capacity;
        }
    }
    return total;
}

double dual_value(const CoeffTable& table, const Selection& x, const Multipliers& m, const Thresholds& th)
{
    double g = 0.0;
    for (int k : x) {
        if (k >= 0) {
            g += candidate_score(table, k, m);
        }
    }
    if (m.lambda != 0.0) {
        g += m.lambda * th.avg;
    }
    if (m.mu != 0.0) {
        g += m.mu * th.max;
    }
    for (double v : m.nu) {
        g += v;
    }
    return g;
}

Loads selection_loads(const CoeffTable& table, const Selection& x)
{
    std::vector<double> avg(table.num_users, 0.0);
    std::vector<double> slot(static_cast<std::size_t>(table.num_users) * table.num_slots, 0.0);
    for (int n : table.priority_order) {
        const int k = x.at(n);
        if (k < 0) {
            continue;
        }
        const Candidate& c = table.candidates[k];
        for (int u = 0; u < table.num_users; ++u) {
            avg[u] += c.avg[u];
        }
        for (std::size_t i = 0; i < slot.size(); ++i) {
            slot[i] += c.per_slot[i];
        }
    }
    Loads out;
    for (double v : avg) {
        out.worst_avg = std::max(out.worst_avg, v);
    }
    for (double v : slot) {
        out.worst_slot = std::max(out.worst_slot, v);
    }
    return out;
}

Subgradients compute_subgradients(const CoeffTable& table, const Selection& x, const Thresholds& th)
{
    const Loads loads = selection_loads(table, x);
    Subgradients s;
    s.lambda = th.avg - loads.worst_avg;
    s.mu = th.max - loads.worst_slot;
    s.nu.assign(table.satellites.size(), 1.0);
    for (int k : x) {
        if (k >= 0) {
            s.nu[table.sat_index[k]] -= 1.0;
        }
    }
    return s;
}

namespace {

double step_multiplier(double value, double subgradient, double step, UpdateRule rule)
{
    if (!std::isfinite(subgradient)) {
        // Unbounded threshold: the constraint is never relaxed.
        return 0.0;
    }
    const double moved = rule == UpdateRule::ascent ? value + step * subgradient : value - step * subgradient;
    return std::max(0.0, moved);
}

}  // namespace

Multipliers update_multipliers(const Multipliers& m, const Subgradients& s, int k, const SolverConfig& cfg)
{
    if (k < 1) {
        throw std::invalid_argument("multiplier step index starts at 1");
    }
    const double base = cfg.step_a / (cfg.step_b + k);
    if (!(base >= 0.0)) {
        throw std::invalid_argument("negative step size");
    }
    Multipliers out;
    out.lambda = step_multiplier(m.lambda, s.lambda, base * cfg.lambda_scale, cfg.rule);
    out.mu = step_multiplier(m.mu, s.mu, base * cfg.mu_scale, cfg.rule);
    out.nu.resize(m.nu.size());
    for (std::size_t i = 0; i < m.nu.size(); ++i) {
        out.nu[i] = step_multiplier(m.nu[i], s.nu.at(i), base * cfg.nu_scale, cfg.rule);
    }
    return out;
}

bool is_feasible(const CoeffTable& table, const Selection& x, const Thresholds& th)
{
    std::vector<int> used;
    for (int k : x) {
        if (k >= 0) {
            used.push_back(table.candidates[k].satellite);
        }
    }
    std::sort(used.begin(), used.end());
    if (std::adjacent_find(used.begin(), used.end()) != used.end()) {
        return false;
    }
    for (int n = 0; n < table.num_clusters; ++n) {
        if (x.at(n) >= 0 && table.candidates[x[n]].cluster != n) {
            return false;
        }
    }
    const Loads loads = selection_loads(table, x);
    return loads.worst_avg <= th.avg && loads.worst_slot <= th.max;
}

Selection repair(const CoeffTable& table, const Multipliers& m, const Thresholds& th)
{
    Selection x(table.num_clusters, -1);
    if (!(th.avg >= 0.0) || !(th.max >= 0.0)) {
        return x;
    }
    const std::size_t cells = static_cast<std::size_t>(table.num_users) * table.num_slots;
    std::vector<double> avg(table.num_users, 0.0);
    std::vector<double> slot(cells, 0.0);
    std::vector<int> used;
    for (int n : table.priority_order) {
        std::vector<std::pair<double, int>> ranked;
        for (int k : table.by_cluster[n]) {
            ranked.push_back({candidate_score(table, k, m), k});
        }
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        for (const auto& [score, k] : ranked) {
            const Candidate& c = table.candidates[k];
            if (std::find(used.begin(), used.end(), c.satellite) != used.end()) {
                continue;
            }
            bool ok = true;
            for (int u = 0; u < table.num_users && ok; ++u) {
                ok = avg[u] + c.avg[u] <= th.avg;
            }
            for (std::size_t i = 0; i < cells && ok; ++i) {
                ok = slot[i] + c.per_slot[i] <= th.max;
            }
            if (!ok) {
                continue;
            }
            for (int u = 0; u < table.num_users; ++u) {
                avg[u] += c.avg[u];
            }
            for (std::size_t i = 0; i < cells; ++i) {
                slot[i] += c.per_slot[i];
            }
            used.push_back(c.satellite);
            x[n] = k;
            break;
        }
    }
    return x;
}

namespace {

// Loads of every selected cluster outside `skip`, used to screen moves
// before the exact check.
struct Residual {
    std::vector<double> avg;
    std::vector<double> slot;

    Residual(const CoeffTable& table, const Selection& x, int skip_a, int skip_b)
        : avg(table.num_users, 0.0), slot(static_cast<std::size_t>(table.num_users) * table.num_slots, 0.0)
    {
        for (int n : table.priority_order) {
            if (n == skip_a || n == skip_b || x[n] < 0) {
                continue;
            }
            const Candidate& c = table.candidates[x[n]];
            for (std::size_t u = 0; u < avg.size(); ++u) {
                avg[u] += c.avg[u];
            }
            for (std::size_t i = 0; i < slot.size(); ++i) {
                slot[i] += c.per_slot[i];
            }
        }
    }

    bool fits(const CoeffTable& table, int k1, int k2, const Thresholds& th) const
    {
        static const std::vector<double> none;
        const auto& a1 = k1 >= 0 ? table.candidates[k1].avg : none;
        const auto& a2 = k2 >= 0 ? table.candidates[k2].avg : none;
        for (std::size_t u = 0; u < avg.size(); ++u) {
            if (avg[u] + (a1.empty() ? 0.0 : a1[u]) + (a2.empty() ? 0.0 : a2[u]) > th.avg) {
                return false;
            }
        }
        if (std::isinf(th.max)) {
            return true;
        }
        const auto& s1 = k1 >= 0 ? table.candidates[k1].per_slot : none;
        const auto& s2 = k2 >= 0 ? table.candidates[k2].per_slot : none;
        for (std::size_t i = 0; i < slot.size(); ++i) {
            if (slot[i] + (s1.empty() ? 0.0 : s1[i]) + (s2.empty() ? 0.0 : s2[i]) > th.max) {
                return false;
            }
        }
        return true;
    }
};

double capacity_of(const CoeffTable& table, int k)
{
    return k >= 0 ? table.candidates[k].capacity : 0.0;
}

bool satellite_taken(const CoeffTable& table, const Selection& x, int k, int skip_a, int skip_b)
{
    if (k < 0) {
        return false;
    }
    for (int n = 0; n < table.num_clusters; ++n) {
        if (n != skip_a && n != skip_b && x[n] >= 0 &&
            table.candidates[x[n]].satellite == table.candidates[k].satellite) {
            return true;
        }
    }
    return false;
}

bool improve_single(const CoeffTable& table, Selection& x, const Thresholds& th)
{
    for (int n : table.priority_order) {
        const Residual rest(table, x, n, -1);
        std::vector<int> ranked = table.by_cluster[n];
        std::stable_sort(ranked.begin(), ranked.end(), [&](int a, int b) {
            return table.candidates[a].capacity > table.candidates[b].capacity;
        });
        const double current = capacity_of(table, x[n]);
        for (int k : ranked) {
            if (table.candidates[k].capacity <= current) {
                break;
            }
            if (satellite_taken(table, x, k, n, -1) || !rest.fits(table, k, -1, th)) {
                continue;
            }
            Selection trial = x;
            trial[n] = k;
            if (is_feasible(table, trial, th)) {
                x = std::move(trial);
                return true;
            }
        }
    }
    return false;
}

// Re-seats two clusters at once; frees a satellite or a slice of the
// interference budget that no single replacement can.
bool improve_pair(const CoeffTable& table, Selection& x, const Thresholds& th)
{
    for (std::size_t ia = 0; ia < table.priority_order.size(); ++ia) {
        for (std::size_t ib = ia + 1; ib < table.priority_order.size(); ++ib) {
            const int a = table.priority_order[ia];
            const int b = table.priority_order[ib];
            const double current = capacity_of(table, x[a]) + capacity_of(table, x[b]);
            std::vector<int> opts_a{-1};
            std::vector<int> opts_b{-1};
            opts_a.insert(opts_a.end(), table.by_cluster[a].begin(), table.by_cluster[a].end());
            opts_b.insert(opts_b.end(), table.by_cluster[b].begin(), table.by_cluster[b].end());
            struct Move {
                double gain;
                int ka;
                int kb;
            };
            std::vector<Move> moves;
            for (int ka : opts_a) {
                for (int kb : opts_b) {
                    const double gain = capacity_of(table, ka) + capacity_of(table, kb) - current;
                    if (gain <= 0.0) {
                        continue;
                    }
                    if (ka >= 0 && kb >= 0 && table.candidates[ka].satellite == table.candidates[kb].satellite) {
                        continue;
                    }
                    moves.push_back({gain, ka, kb});
                }
            }
            if (moves.empty()) {
                continue;
            }
            std::stable_sort(moves.begin(), moves.end(), [](const Move& l, const Move& r) { return l.gain > r.gain; });
            const Residual rest(table, x, a, b);
            for (const Move& mv : moves) {
                if (satellite_taken(table, x, mv.ka, a, b) || satellite_taken(table, x, mv.kb, a, b) ||
                    !rest.fits(table, mv.ka, mv.kb, th)) {
                    continue;
                }
                Selection trial = x;
                trial[a] = mv.ka;
                trial[b] = mv.kb;
                if (is_feasible(table, trial, th)) {
                    x = std::move(trial);
                    return true;
                }
            }
        }
    }
    return false;
}

}  // namespace

Selection improve_locally(const CoeffTable& table, Selection x, const Thresholds& th)
{
    if (!is_feasible(table, x, th)) {
        return x;
    }
    // Every accepted move strictly raises the objective, so this terminates;
    // the cap bounds the work on large instances.
    for (int moves = 0; moves < 4 * table.num_clusters + 8; ++moves) {
        if (!improve_single(table, x, th) && !improve_pair(table, x, th)) {
            break;
        }
    }
    return x;
}

AssociationMatrix to_association(const CoeffTable& table, const Selection& x)
{
    AssociationMatrix a(SystemTag::secondary, table.num_clusters);
    for (int n = 0; n < table.num_clusters; ++n) {
        if (x.at(n) >= 0) {
            a.serving[n] = table.candidates[x[n]].satellite;
        }
    }
    return a;
}

SolveResult solve_handover(const CoeffTable& table, const Thresholds& th, const SolverConfig& cfg)
{
    cfg.validate();
    SolveResult r;
    Multipliers m;
    m.nu.assign(table.satellites.size(), 0.0);
    r.best_multipliers = m;
    r.best_dual = std::numeric_limits<double>::infinity();
    double prev = std::numeric_limits<double>::quiet_NaN();
    Multipliers last = m;
    for (int k = 0; k < std::max(cfg.max_iterations, 1); ++k) {
        Selection x(table.num_clusters, -1);
        for (int n = 0; n < table.num_clusters; ++n) {
            x[n] = cluster_subproblem(table, n, m);
        }
        const double g = dual_value(table, x, m, th);
        r.dual_trace.push_back(g);
        ++r.iterations;
        last = m;
        if (g < r.best_dual) {
            r.best_dual = g;
            r.best_multipliers = m;
        }
        if (k > 0 && std::abs(g - prev) <= cfg.tolerance * std::max(1.0, std::abs(prev))) {
            r.converged = true;
            break;
        }
        prev = g;
        if (k + 1 >= cfg.max_iterations) {
            break;
        }
        m = update_multipliers(m, compute_subgradients(table, x, th), k + 1, cfg);
    }

    r.feasible = th.avg >= 0.0 && th.max >= 0.0;
    Multipliers zero;
    zero.nu.assign(table.satellites.size(), 0.0);
    std::vector<Multipliers> starts{r.best_multipliers, last, zero};
    // Interference prices around "one average capacity per full budget".
    if (cfg.price_ladder > 0 && !table.candidates.empty()) {
        double capacity = 0.0;
        for (const auto& c : table.candidates) {
            capacity += c.capacity;
        }
        capacity /= static_cast<double>(table.candidates.size());
        const double lambda_ref = th.avg > 0.0 && std::isfinite(th.avg) ? capacity / th.avg : 0.0;
        const double mu_ref = th.max > 0.0 && std::isfinite(th.max) ? capacity / th.max : 0.0;
        for (int j = -cfg.price_ladder; j <= cfg.price_ladder; ++j) {
            Multipliers p = zero;
            p.lambda = std::ldexp(lambda_ref, j);
            p.mu = std::ldexp(mu_ref, j);
            starts.push_back(std::move(p));
        }
    }
    r.selection.assign(table.num_clusters, -1);
    r.primal = 0.0;
    bool have = false;
    for (const Multipliers& start : starts) {
        Selection x = repair(table, start, th);
        if (cfg.local_search) {
            x = improve_locally(table, std::move(x), th);
        }
        const double obj = primal_objective(table, x);
        if (!have || obj > r.primal) {
            r.selection = std::move(x);
            r.primal = obj;
            have = true;
        }
    }
    for (int n = 0; n < table.num_clusters; ++n) {
        if (r.selection[n] < 0) {
            r.outage.push_back(n);
        }
    }
    r.association = to_association(table, r.selection);
    return r;
}

OracleResult brute_force_oracle(const CoeffTable& table, const Thresholds& th, std::int64_t budget)
{
    double combos = 1.0;
    for (const auto& list : table.by_cluster) {
        combos *= static_cast<double>(list.size() + 1);
    }
    if (combos > static_cast<double>(budget)) {
        throw std::length_error("instance exceeds the enumeration budget");
    }
    OracleResult best;
    best.selection.assign(table.num_clusters, -1);
    if (!(th.avg >= 0.0) || !(th.max >= 0.0)) {
        return best;
    }
    const std::size_t cells = static_cast<std::size_t>(table.num_users) * table.num_slots;
    const auto& order = table.priority_order;
    Selection x(table.num_clusters, -1);
    std::vector<std::vector<double>> avg(order.size() + 1, std::vector<double>(table.num_users, 0.0));
    std::vector<std::vector<double>> slot(order.size() + 1, std::vector<double>(cells, 0.0));
    std::vector<int> used;

    // Depth-first in priority order; partial sums are kept per depth so the
    // accumulation order matches selection_loads.
    auto recurse = [&](auto&& self, std::size_t depth, double objective) -> void {
        if (depth == order.size()) {
            ++best.evaluated;
            if (!best.any_feasible || objective > best.objective) {
                best.any_feasible = true;
                best.objective = objective;
                best.selection = x;
            }
            return;
        }
        const int n = order[depth];
        avg[depth + 1] = avg[depth];
        slot[depth + 1] = slot[depth];
        x[n] = -1;
        self(self, depth + 1, objective);
        for (int k : table.by_cluster[n]) {
            const Candidate& c = table.candidates[k];
            if (std::find(used.begin(), used.end(), c.satellite) != used.end()) {
                continue;
            }
            bool ok = true;
            for (int u = 0; u < table.num_users && ok; ++u) {
                avg[depth + 1][u] = avg[depth][u] + c.avg[u];
                ok = avg[depth + 1][u] <= th.avg;
            }
            for (std::size_t i = 0; i < cells && ok; ++i) {
                slot[depth + 1][i] = slot[depth][i] + c.per_slot[i];
                ok = slot[depth + 1][i] <= th.max;
            }
            if (!ok) {
                ++best.evaluated;
                continue;
            }
            // Refill any entries skipped by an early exit above.
            for (int u = 0; u < table.num_users; ++u) {
                avg[depth + 1][u] = avg[depth][u] + c.avg[u];
            }
            for (std::size_t i = 0; i < cells; ++i) {
                slot[depth + 1][i] = slot[depth][i] + c.per_slot[i];
            }
            x[n] = k;
            used.push_back(c.satellite);
            self(self, depth + 1, objective + c.capacity);
            used.pop_back();
            x[n] = -1;
        }
    };
    recurse(recurse, 0, 0.0);
    return best;
}

}  // namespace leocoex
