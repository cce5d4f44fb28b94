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

#include <gtest/gtest.h>

#include "leocoex/solver.hpp"
#include "support.hpp"

namespace leocoex {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One user, one slot: each candidate is (satellite, cluster, capacity, INR).
CoeffTable tiny_table(const std::vector<std::tuple<int, int, double, double>>& rows, int clusters)
{
    CoeffTable t;
    t.num_clusters = clusters;
    t.num_users = 1;
    t.num_slots = 1;
    for (int n = 0; n < clusters; ++n) {
        t.priority_order.push_back(n);
    }
    for (const auto& [sat, cluster, cap, inr] : rows) {
        Candidate c;
        c.satellite = sat;
        c.cluster = cluster;
        c.capacity = cap;
        c.avg = {inr};
        c.per_slot = {inr};
        t.candidates.push_back(c);
    }
    t.finalize();
    return t;
}

// A(sat 1) and B(sat 2) for cluster 0, C(sat 1) and D(sat 3) for cluster 1.
CoeffTable two_cluster_example()
{
    return tiny_table({{1, 0, 5.0, 0.3}, {2, 0, 4.0, 0.1}, {1, 1, 6.0, 0.2}, {3, 1, 2.0, 0.05}}, 2);
}

constexpr int A = 0, B = 1, C = 2, D = 3;

TEST(Solver, TableIndexing)
{
    const CoeffTable t = two_cluster_example();
    EXPECT_EQ(t.satellites, (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(t.sat_index, (std::vector<int>{0, 1, 0, 2}));
    EXPECT_EQ(t.by_cluster[0], (std::vector<int>{A, B}));
    EXPECT_EQ(t.by_cluster[1], (std::vector<int>{C, D}));
    EXPECT_DOUBLE_EQ(t.candidates[A].worst_avg, 0.3);
    EXPECT_DOUBLE_EQ(t.candidates[A].worst_slot, 0.3);

    CoeffTable bad = t;
    bad.candidates[0].cluster = 5;
    EXPECT_THROW(bad.finalize(), std::invalid_argument);
    bad = t;
    bad.candidates[0].avg.push_back(0.0);
    EXPECT_THROW(bad.finalize(), std::invalid_argument);
}

TEST(Solver, ScoresAndSubproblem)
{
    const CoeffTable t = two_cluster_example();
    Multipliers m;
    m.lambda = 1.0;
    m.nu = {0.5, 0.0, 0.0};
    EXPECT_DOUBLE_EQ(candidate_score(t, A, m), 5.0 - 0.3 - 0.5);
    EXPECT_DOUBLE_EQ(candidate_score(t, B, m), 4.0 - 0.1);
    EXPECT_DOUBLE_EQ(candidate_score(t, C, m), 6.0 - 0.2 - 0.5);
    EXPECT_EQ(cluster_subproblem(t, 0, m), A);
    EXPECT_EQ(cluster_subproblem(t, 1, m), C);
    m.nu = {2.0, 0.0, 0.0};
    EXPECT_EQ(cluster_subproblem(t, 0, m), B);
    // Nothing worth taking.
    Multipliers high;
    high.lambda = 100.0;
    high.nu = {0.0, 0.0, 0.0};
    EXPECT_EQ(cluster_subproblem(t, 0, high), -1);
}

TEST(Solver, TiesGoToLowestSatellite)
{
    const CoeffTable t = tiny_table({{7, 0, 3.0, 0.1}, {4, 0, 3.0, 0.1}}, 1);
    Multipliers m;
    m.nu.assign(2, 0.0);
    EXPECT_EQ(t.candidates[cluster_subproblem(t, 0, m)].satellite, 4);
}

TEST(Solver, DualValueAndSubgradients)
{
    const CoeffTable t = two_cluster_example();
    const Thresholds th{0.4, kInf};
    Multipliers m;
    m.lambda = 1.0;
    m.nu = {0.5, 0.0, 0.0};
    const Selection bc{B, C};
    // 3.9 + 5.3 + 0.4 + 0.5
    EXPECT_NEAR(dual_value(t, bc, m, th), 10.1, 1e-12);
    EXPECT_DOUBLE_EQ(primal_objective(t, bc), 10.0);

    const Subgradients s = compute_subgradients(t, Selection{A, C}, th);
    EXPECT_NEAR(s.lambda, 0.4 - 0.5, 1e-15);
    EXPECT_EQ(s.mu, kInf);
    EXPECT_EQ(s.nu, (std::vector<double>{-1.0, 1.0, 1.0}));

    const Subgradients empty = compute_subgradients(t, Selection{-1, -1}, Thresholds{0.4, 0.7});
    EXPECT_DOUBLE_EQ(empty.lambda, 0.4);
    EXPECT_DOUBLE_EQ(empty.mu, 0.7);
    EXPECT_EQ(empty.nu, (std::vector<double>{1.0, 1.0, 1.0}));
}

TEST(Solver, UpdateRules)
{
    const CoeffTable t = two_cluster_example();
    const Subgradients s = compute_subgradients(t, Selection{A, C}, Thresholds{0.4, kInf});
    Multipliers zero;
    zero.nu.assign(3, 0.0);
    SolverConfig cfg;  // step 1 / (10 + k)

    const Multipliers up = update_multipliers(zero, s, 1, cfg);
    EXPECT_EQ(up.lambda, 0.0);
    EXPECT_EQ(up.mu, 0.0);
    EXPECT_EQ(up.nu[0], 0.0);
    EXPECT_NEAR(up.nu[1], 1.0 / 11.0, 1e-15);
    EXPECT_NEAR(up.nu[2], 1.0 / 11.0, 1e-15);

    cfg.rule = UpdateRule::descent;
    const Multipliers down = update_multipliers(zero, s, 1, cfg);
    EXPECT_NEAR(down.lambda, 0.1 / 11.0, 1e-15);
    EXPECT_EQ(down.mu, 0.0);
    EXPECT_NEAR(down.nu[0], 1.0 / 11.0, 1e-15);
    EXPECT_EQ(down.nu[1], 0.0);

    EXPECT_THROW(update_multipliers(zero, s, 0, cfg), std::invalid_argument);
    EXPECT_EQ(parse_update_rule("descent"), UpdateRule::descent);
    EXPECT_EQ(to_string(UpdateRule::ascent), "ascent");
    EXPECT_THROW(parse_update_rule("newton"), std::invalid_argument);
}

TEST(Solver, ThreeIterationHandTrace)
{
    // At zero prices both clusters pick satellite 1 (A and C). Only the
    // unused satellites' prices move, so A and C stay optimal and the dual
    // grows by twice each step size.
    const CoeffTable t = two_cluster_example();
    SolverConfig cfg;
    cfg.max_iterations = 3;
    const SolveResult r = solve_handover(t, Thresholds{0.4, kInf}, cfg);
    ASSERT_EQ(r.dual_trace.size(), 3u);
    EXPECT_NEAR(r.dual_trace[0], 11.0, 1e-12);
    EXPECT_NEAR(r.dual_trace[1], 11.0 + 2.0 / 11.0, 1e-12);
    EXPECT_NEAR(r.dual_trace[2], 11.0 + 2.0 / 11.0 + 2.0 / 12.0, 1e-12);
    EXPECT_NEAR(r.best_dual, 11.0, 1e-12);
    EXPECT_EQ(r.iterations, 3);
    EXPECT_FALSE(r.converged);
    // Primal: B + C is the optimum.
    EXPECT_EQ(r.selection, (Selection{B, C}));
    EXPECT_DOUBLE_EQ(r.primal, 10.0);
    EXPECT_TRUE(r.outage.empty());
    EXPECT_EQ(r.association.serving, (std::vector<int>{2, 1}));
}

TEST(Solver, FeasibilityChecks)
{
    const CoeffTable t = two_cluster_example();
    const Thresholds th{0.4, kInf};
    EXPECT_TRUE(is_feasible(t, Selection{B, C}, th));
    EXPECT_FALSE(is_feasible(t, Selection{A, C}, th));  // satellite 1 twice
    EXPECT_FALSE(is_feasible(t, Selection{C, -1}, th));  // wrong cluster
    EXPECT_FALSE(is_feasible(t, Selection{A, D}, Thresholds{0.34, kInf}));
    EXPECT_FALSE(is_feasible(t, Selection{B, C}, Thresholds{0.4, 0.25}));
    EXPECT_TRUE(is_feasible(t, Selection{-1, -1}, Thresholds{0.0, 0.0}));
    const Loads l = selection_loads(t, Selection{A, D});
    EXPECT_NEAR(l.worst_avg, 0.35, 1e-15);
    EXPECT_NEAR(l.worst_slot, 0.35, 1e-15);
}

TEST(Solver, RepairAndLocalSearch)
{
    const CoeffTable t = two_cluster_example();
    const Thresholds th{0.4, kInf};
    Multipliers zero;
    zero.nu.assign(3, 0.0);
    // Greedy by capacity: cluster 0 takes A, cluster 1 cannot take C.
    EXPECT_EQ(repair(t, zero, th), (Selection{A, D}));
    EXPECT_EQ(improve_locally(t, Selection{A, D}, th), (Selection{B, C}));
    EXPECT_EQ(repair(t, zero, Thresholds{-0.1, kInf}), (Selection{-1, -1}));
}

TEST(Solver, NegativeBudgetMeansOutage)
{
    const CoeffTable t = two_cluster_example();
    const SolveResult r = solve_handover(t, Thresholds{-0.01, kInf}, SolverConfig{});
    EXPECT_FALSE(r.feasible);
    EXPECT_EQ(r.outage, (std::vector<int>{0, 1}));
    EXPECT_EQ(r.association.served_count(), 0);
    EXPECT_DOUBLE_EQ(r.primal, 0.0);
}

TEST(Solver, UnboundedThresholdsServeEveryCluster)
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        auto inst = testing::random_instance(rng, 6, 4, 3, 2);
        // Give each cluster a private satellite so full service is possible.
        for (int n = 0; n < inst.table.num_clusters; ++n) {
            Candidate c = inst.table.candidates.empty() ? Candidate{} : inst.table.candidates.front();
            c.satellite = 1000 + n;
            c.cluster = n;
            c.capacity = 1.0;
            c.avg.assign(inst.table.num_users, 0.5);
            c.per_slot.assign(static_cast<std::size_t>(inst.table.num_users) * inst.table.num_slots, 0.5);
            inst.table.candidates.push_back(c);
        }
        inst.table.finalize();
        const SolveResult r = solve_handover(inst.table, Thresholds{kInf, kInf}, SolverConfig{});
        EXPECT_EQ(r.association.served_count(), inst.table.num_clusters);
        EXPECT_TRUE(r.outage.empty());
        EXPECT_TRUE(r.association.is_valid());
    }
}

TEST(Solver, OracleMatchesNaiveEnumeration)
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        const auto inst = testing::random_instance(rng, 5, 3, 3, 2);
        const auto naive = testing::naive_optimum(inst.table, inst.thresholds);
        const auto oracle = brute_force_oracle(inst.table, inst.thresholds);
        EXPECT_TRUE(oracle.any_feasible);
        EXPECT_NEAR(oracle.objective, naive.objective, 1e-9);
        EXPECT_TRUE(testing::naive_feasible(inst.table, oracle.selection, inst.thresholds));
    }
    const auto big = testing::random_instance(rng, 6, 3, 1, 1);
    EXPECT_THROW(brute_force_oracle(big.table, big.thresholds, 1), std::length_error);
}

TEST(Solver, PrimalIsFeasibleAndNeverBeatsTheOptimum)
{
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 300; ++trial) {
        const auto inst = testing::random_instance(rng, 6, 3, 4, 2);
        const SolveResult r = solve_handover(inst.table, inst.thresholds, SolverConfig{});
        ASSERT_TRUE(testing::naive_feasible(inst.table, r.selection, inst.thresholds));
        ASSERT_TRUE(r.association.is_valid());
        const auto naive = testing::naive_optimum(inst.table, inst.thresholds);
        EXPECT_LE(r.primal, naive.objective + 1e-9);
        EXPECT_NEAR(r.primal, primal_objective(inst.table, r.selection), 1e-12);
    }
}

TEST(Solver, WeakDualityAgainstTheRelaxedProblem)
{
    // The Lagrangian relaxes per-candidate worst-case loads, so its bound
    // covers every selection that respects those loads. With one user and
    // one slot the two problems coincide.
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 300; ++trial) {
        const auto inst = testing::random_instance(rng, 5, 3, 1, 1);
        const SolveResult r = solve_handover(inst.table, inst.thresholds, SolverConfig{});
        const auto naive = testing::naive_optimum(inst.table, inst.thresholds);
        EXPECT_GE(r.best_dual, naive.objective - 1e-9) << trial;
        for (double g : r.dual_trace) {
            EXPECT_GE(g, naive.objective - 1e-9);
        }
    }
}

TEST(Solver, MultipliersStayNonNegative)
{
    std::mt19937_64 rng(89);
    std::normal_distribution<double> g(0.0, 3.0);
    for (UpdateRule rule : {UpdateRule::ascent, UpdateRule::descent}) {
        SolverConfig cfg;
        cfg.rule = rule;
        Multipliers m;
        m.nu.assign(5, 0.0);
        for (int k = 1; k < 200; ++k) {
            Subgradients s;
            s.lambda = g(rng);
            s.mu = g(rng);
            for (int i = 0; i < 5; ++i) {
                s.nu.push_back(g(rng));
            }
            m = update_multipliers(m, s, k, cfg);
            ASSERT_GE(m.lambda, 0.0);
            ASSERT_GE(m.mu, 0.0);
            for (double v : m.nu) {
                ASSERT_GE(v, 0.0);
            }
        }
    }
}

TEST(Solver, ConfigValidation)
{
    SolverConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.step_a = 0.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = SolverConfig{};
    cfg.price_ladder = 31;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = SolverConfig{};
    cfg.max_iterations = -1;
    EXPECT_THROW(solve_handover(two_cluster_example(), Thresholds{1.0, kInf}, cfg), std::invalid_argument);
}

}  // namespace
}  // namespace leocoex
