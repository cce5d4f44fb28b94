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

#include "leocoex/protection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "leocoex/units.hpp"

namespace leocoex {

void ProtectionConfig::validate() const
{
    if (std::isnan(inr_avg_threshold_db) || std::isnan(inr_max_threshold_db)) {
        throw std::invalid_argument("INR thresholds must be numbers");
    }
    if (inr_max_threshold_db < inr_avg_threshold_db) {
        throw std::invalid_argument("absolute INR threshold must be at least the average threshold");
    }
    if (window_past_slots < 0) {
        throw std::invalid_argument("past averaging window must be non-negative");
    }
    if (handover_period_slots < 1) {
        throw std::invalid_argument("handover period must be at least one slot");
    }
}

double ProtectionConfig::avg_threshold() const
{
    return db_to_linear(inr_avg_threshold_db);
}

double ProtectionConfig::max_threshold() const
{
    return db_to_linear(inr_max_threshold_db);
}

InterferenceHistory::InterferenceHistory(int num_users, int capacity)
    : num_users_(num_users), capacity_(capacity),
      samples_(static_cast<std::size_t>(num_users) * static_cast<std::size_t>(std::max(capacity, 0)), 0.0)
{
    if (num_users < 0 || capacity < 0) {
        throw std::invalid_argument("history dimensions must be non-negative");
    }
}

void InterferenceHistory::push(std::span<const double> values)
{
    if (static_cast<int>(values.size()) != num_users_) {
        throw std::invalid_argument("history push needs one sample per user");
    }
    for (double v : values) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("INR samples must be finite and non-negative");
        }
    }
    if (capacity_ > 0) {
        const auto row = static_cast<std::size_t>(recorded_ % capacity_) * num_users_;
        std::copy(values.begin(), values.end(), samples_.begin() + static_cast<std::ptrdiff_t>(row));
    }
    ++recorded_;
}

double InterferenceHistory::window_sum(int user) const
{
    // Oldest first, so the sum does not depend on where the ring starts.
    const std::int64_t filled = std::min<std::int64_t>(recorded_, capacity_);
    double sum = 0.0;
    for (std::int64_t k = recorded_ - filled; k < recorded_; ++k) {
        sum += samples_[static_cast<std::size_t>(k % capacity_) * num_users_ + user];
    }
    return sum;
}

double InterferenceHistory::max_window_sum() const
{
    double worst = 0.0;
    for (int u = 0; u < num_users_; ++u) {
        worst = std::max(worst, window_sum(u));
    }
    return worst;
}

double effective_avg_threshold(double worst_past_sum, const ProtectionConfig& cfg)
{
    const double tw = cfg.window_past_slots;
    const double th = cfg.handover_period_slots;
    return ((tw + th) * cfg.avg_threshold() - worst_past_sum) / th;
}

double effective_avg_threshold(const InterferenceHistory& history, const ProtectionConfig& cfg)
{
    return effective_avg_threshold(history.max_window_sum(), cfg);
}

double horizon_avg_inr(std::span<const double> per_slot, int handover_period_slots)
{
    if (handover_period_slots < 1) {
        throw std::invalid_argument("handover period must be at least one slot");
    }
    double sum = 0.0;
    for (double v : per_slot) {
        sum += v;
    }
    return sum / handover_period_slots;
}

double horizon_max_inr(std::span<const double> per_slot)
{
    double m = 0.0;
    for (double v : per_slot) {
        m = std::max(m, v);
    }
    return m;
}

void InrTrace::append(std::span<const double> row)
{
    if (static_cast<int>(row.size()) != num_users) {
        throw std::invalid_argument("trace row needs one sample per user");
    }
    values.insert(values.end(), row.begin(), row.end());
}

WindowReport verify_window(const InrTrace& trace, std::span<const std::int64_t> handover_slots,
                           const ProtectionConfig& cfg)
{
    cfg.validate();
    const double avg_th = cfg.avg_threshold();
    const double max_th = cfg.max_threshold();
    const int tw = cfg.window_past_slots;
    const int th = cfg.handover_period_slots;
    WindowReport report;
    for (std::int64_t t : handover_slots) {
        if (t < 0 || t + th > trace.num_slots()) {
            report.skipped.push_back(t);
            continue;
        }
        for (int u = 0; u < trace.num_users; ++u) {
            double sum = 0.0;
            for (std::int64_t s = std::max<std::int64_t>(t - tw, 0); s < t + th; ++s) {
                sum += trace.at(s, u);
            }
            double peak = 0.0;
            for (std::int64_t s = t; s < t + th; ++s) {
                peak = std::max(peak, trace.at(s, u));
            }
            WindowCheck c;
            c.handover_slot = t;
            c.user = u;
            c.mean_inr = sum / (tw + th);
            c.max_inr = peak;
            c.avg_violated = c.mean_inr > avg_th;
            c.abs_violated = c.max_inr > max_th;
            report.avg_flags += c.avg_violated;
            report.abs_flags += c.abs_violated;
            report.checks.push_back(c);
        }
    }
    return report;
}

}  // namespace leocoex
