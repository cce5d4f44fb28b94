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
#include <limits>
#include <span>
#include <vector>

namespace leocoex {

struct ProtectionConfig {
    double inr_avg_threshold_db = -6.0;
    double inr_max_threshold_db = std::numeric_limits<double>::infinity();
    int window_past_slots = 100;     // T_w
    int handover_period_slots = 150;  // T_h

    void validate() const;

    double avg_threshold() const;  // linear
    double max_threshold() const;  // linear, +inf when unbounded
};

/// Per-user ring buffer of the last `capacity` linear INR samples. Slots
/// before the first push read as zero.
class InterferenceHistory {
public:
    InterferenceHistory(int num_users, int capacity);

    int num_users() const { return num_users_; }
    int capacity() const { return capacity_; }
    std::int64_t slots_recorded() const { return recorded_; }

    /// Appends one slot; `values` holds one sample per user.
    void push(std::span<const double> values);

    /// Sum of the user's samples over the last `capacity` slots.
    double window_sum(int user) const;

    /// Largest window_sum over all users.
    double max_window_sum() const;

private:
    int num_users_;
    int capacity_;
    std::int64_t recorded_ = 0;
    std::vector<double> samples_;  // [slot % capacity][user]
};

/// Average budget left for the next handover period: the per-slot level the
/// worst user may see over T_h so that its mean over T_w + T_h stays at the
/// threshold. May be negative.
double effective_avg_threshold(const InterferenceHistory& history, const ProtectionConfig& cfg);

/// Same from an explicit worst-user past sum.
double effective_avg_threshold(double worst_past_sum, const ProtectionConfig& cfg);

/// Mean of a per-slot INR series over the handover period.
double horizon_avg_inr(std::span<const double> per_slot, int handover_period_slots);

/// Largest per-slot value.
double horizon_max_inr(std::span<const double> per_slot);

/// Realized per-user INR, row-major [slot][user].
struct InrTrace {
    int num_users = 0;
    std::vector<double> values;

    std::int64_t num_slots() const { return num_users == 0 ? 0 : static_cast<std::int64_t>(values.size()) / num_users; }
    double at(std::int64_t slot, int user) const { return values[slot * num_users + user]; }
    std::span<const double> slot(std::int64_t s) const { return {values.data() + s * num_users, static_cast<std::size_t>(num_users)}; }
    void append(std::span<const double> row);
};

struct WindowCheck {
    std::int64_t handover_slot = 0;
    int user = 0;
    double mean_inr = 0.0;  // over [t - T_w, t + T_h), zero before the start
    double max_inr = 0.0;   // over [t, t + T_h)
    bool avg_violated = false;
    bool abs_violated = false;
};

struct WindowReport {
    std::vector<WindowCheck> checks;
    int avg_flags = 0;
    int abs_flags = 0;
    std::vector<std::int64_t> skipped;  // handovers whose period runs past the trace
};

/// Checks every (handover, user) pair against the two thresholds.
WindowReport verify_window(const InrTrace& trace, std::span<const std::int64_t> handover_slots,
                           const ProtectionConfig& cfg);

}  // namespace leocoex
