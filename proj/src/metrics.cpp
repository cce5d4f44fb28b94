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

#include "leocoex/metrics.hpp"

#include <algorithm>
#include <stdexcept>

#include "leocoex/units.hpp"

namespace leocoex {

double violation_rate(std::span<const double> inr_linear, double threshold_db)
{
    if (inr_linear.empty()) {
        return 0.0;
    }
    return fraction_above(inr_linear, db_to_linear(threshold_db));
}

double utilization(const AssociationMatrix& assoc)
{
    if (assoc.num_clusters() == 0) {
        return 0.0;
    }
    return static_cast<double>(assoc.served_count()) / assoc.num_clusters();
}

std::vector<CdfPoint> empirical_cdf(std::vector<double> samples)
{
    std::vector<CdfPoint> out;
    if (samples.empty()) {
        return out;
    }
    for (double v : samples) {
        if (std::isnan(v)) {
            throw std::invalid_argument("CDF samples must not be NaN");
        }
    }
    std::sort(samples.begin(), samples.end());
    const double total = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i + 1 < samples.size() && samples[i + 1] == samples[i]) {
            continue;
        }
        out.push_back({samples[i], static_cast<double>(i + 1) / total});
    }
    out.back().fraction = 1.0;
    return out;
}

std::vector<double> per_user_violation(const InrTrace& trace, double threshold_db)
{
    const double th = db_to_linear(threshold_db);
    std::vector<double> out(trace.num_users, 0.0);
    const auto slots = trace.num_slots();
    if (slots == 0) {
        return out;
    }
    for (std::int64_t s = 0; s < slots; ++s) {
        for (int u = 0; u < trace.num_users; ++u) {
            out[u] += trace.at(s, u) > th;
        }
    }
    for (double& v : out) {
        v /= static_cast<double>(slots);
    }
    return out;
}

double fraction_above(std::span<const double> samples, double threshold)
{
    if (samples.empty()) {
        return 0.0;
    }
    const auto n = std::count_if(samples.begin(), samples.end(), [&](double v) { return v > threshold; });
    return static_cast<double>(n) / static_cast<double>(samples.size());
}

}  // namespace leocoex
