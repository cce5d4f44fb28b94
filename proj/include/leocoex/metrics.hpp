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

#include <span>
#include <utility>
#include <vector>

#include "leocoex/association.hpp"
#include "leocoex/protection.hpp"

namespace leocoex {

/// Fraction of users whose INR in one slot is strictly above the threshold.
double violation_rate(std::span<const double> inr_linear, double threshold_db);

/// Fraction of clusters with a server.
double utilization(const AssociationMatrix& assoc);

struct CdfPoint {
    double value = 0.0;
    double fraction = 0.0;
};

/// Empirical CDF: distinct sorted values with the fraction of samples at or
/// below each. The last fraction is exactly 1.
std::vector<CdfPoint> empirical_cdf(std::vector<double> samples);

/// Per-user fraction of slots with INR strictly above the threshold.
std::vector<double> per_user_violation(const InrTrace& trace, double threshold_db);

/// Fraction of samples strictly above the threshold.
double fraction_above(std::span<const double> samples, double threshold);

}  // namespace leocoex
