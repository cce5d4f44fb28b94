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

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "leocoex/solver.hpp"

namespace leocoex::testing {

struct RandomInstance {
    CoeffTable table;
    Thresholds thresholds;
};

/// Small synthetic handover instant. Satellites are shared between clusters
/// so the one-cluster-per-satellite constraint binds; INR levels are spread
/// over three decades so either threshold can bind.
inline RandomInstance random_instance(std::mt19937_64& rng, int max_sats, int max_clusters, int max_users,
                                      int num_slots)
{
    std::uniform_int_distribution<int> sats(1, max_sats);
    std::uniform_int_distribution<int> clusters(1, max_clusters);
    std::uniform_int_distribution<int> users(1, max_users);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    RandomInstance out;
    CoeffTable& t = out.table;
    const int num_sats = sats(rng);
    t.num_clusters = clusters(rng);
    t.num_users = users(rng);
    t.num_slots = num_slots;
    t.priority_order.resize(t.num_clusters);
    std::iota(t.priority_order.begin(), t.priority_order.end(), 0);
    std::shuffle(t.priority_order.begin(), t.priority_order.end(), rng);

    for (int n = 0; n < t.num_clusters; ++n) {
        for (int s = 0; s < num_sats; ++s) {
            if (unit(rng) > 0.7) {
                continue;
            }
            Candidate c;
            c.satellite = 100 + s;
            c.cluster = n;
            c.capacity = 0.5 + 9.5 * unit(rng);
            c.per_slot.resize(static_cast<std::size_t>(t.num_users) * num_slots);
            for (auto& v : c.per_slot) {
                v = unit(rng) < 0.25 ? 0.0 : std::pow(10.0, -3.0 + 3.0 * unit(rng));
            }
            c.avg.assign(t.num_users, 0.0);
            for (int tau = 0; tau < num_slots; ++tau) {
                for (int u = 0; u < t.num_users; ++u) {
                    c.avg[u] += c.per_slot[static_cast<std::size_t>(tau) * t.num_users + u];
                }
            }
            for (auto& v : c.avg) {
                v /= num_slots;
            }
            t.candidates.push_back(std::move(c));
        }
    }
    t.finalize();
    out.thresholds.avg = std::pow(10.0, -1.5 + 1.8 * unit(rng));
    out.thresholds.max = unit(rng) < 0.5 ? std::numeric_limits<double>::infinity()
                                         : out.thresholds.avg * (1.0 + 2.0 * unit(rng));
    return out;
}

/// Exhaustive optimum with straightforward re-evaluation of every
/// constraint; shares nothing with the solver beyond the table layout.
struct NaiveOptimum {
    double objective = 0.0;
    Selection selection;
};

inline bool naive_feasible(const CoeffTable& t, const Selection& x, const Thresholds& th)
{
    for (int a = 0; a < t.num_clusters; ++a) {
        for (int b = a + 1; b < t.num_clusters; ++b) {
            if (x[a] >= 0 && x[b] >= 0 && t.candidates[x[a]].satellite == t.candidates[x[b]].satellite) {
                return false;
            }
        }
    }
    for (int u = 0; u < t.num_users; ++u) {
        double avg = 0.0;
        for (int n : t.priority_order) {
            if (x[n] >= 0) {
                avg += t.candidates[x[n]].avg[u];
            }
        }
        if (avg > th.avg) {
            return false;
        }
        for (int tau = 0; tau < t.num_slots; ++tau) {
            double v = 0.0;
            for (int n : t.priority_order) {
                if (x[n] >= 0) {
                    v += t.candidates[x[n]].per_slot[static_cast<std::size_t>(tau) * t.num_users + u];
                }
            }
            if (v > th.max) {
                return false;
            }
        }
    }
    return true;
}

inline NaiveOptimum naive_optimum(const CoeffTable& t, const Thresholds& th)
{
    NaiveOptimum best;
    best.selection.assign(t.num_clusters, -1);
    Selection x(t.num_clusters, -1);
    // Odometer over (candidates of cluster n) + "none".
    std::vector<int> digit(t.num_clusters, 0);
    while (true) {
        for (int n = 0; n < t.num_clusters; ++n) {
            x[n] = digit[n] == 0 ? -1 : t.by_cluster[n][digit[n] - 1];
        }
        if (naive_feasible(t, x, th)) {
            double obj = 0.0;
            for (int k : x) {
                obj += k >= 0 ? t.candidates[k].capacity : 0.0;
            }
            if (obj > best.objective) {
                best.objective = obj;
                best.selection = x;
            }
        }
        int n = 0;
        while (n < t.num_clusters && ++digit[n] > static_cast<int>(t.by_cluster[n].size())) {
            digit[n++] = 0;
        }
        if (n == t.num_clusters) {
            break;
        }
    }
    return best;
}

}  // namespace leocoex::testing
