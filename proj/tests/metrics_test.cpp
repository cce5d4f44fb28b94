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

#include <algorithm>
#include <random>

#include "leocoex/metrics.hpp"
#include "leocoex/units.hpp"

namespace leocoex {
namespace {

TEST(Metrics, ViolationRate)
{
    const double th = -12.2;
    const std::vector<double> none{0.0, db_to_linear(-20.0), db_to_linear(-12.3)};
    EXPECT_DOUBLE_EQ(violation_rate(none, th), 0.0);
    const std::vector<double> half{db_to_linear(-20.0), db_to_linear(-10.0)};
    EXPECT_DOUBLE_EQ(violation_rate(half, th), 0.5);
    // Equal to the threshold is not a violation.
    const std::vector<double> at{db_to_linear(th)};
    EXPECT_DOUBLE_EQ(violation_rate(at, th), 0.0);
    const std::vector<double> some{1.0, 0.0};
    EXPECT_DOUBLE_EQ(violation_rate(some, std::numeric_limits<double>::infinity()), 0.0);
    EXPECT_DOUBLE_EQ(violation_rate(some, -std::numeric_limits<double>::infinity()), 0.5);
    EXPECT_DOUBLE_EQ(violation_rate({}, th), 0.0);
}

TEST(Metrics, Utilization)
{
    AssociationMatrix m(SystemTag::secondary, 10);
    for (int n = 0; n < 7; ++n) {
        m.serving[n] = n + 40;
    }
    EXPECT_DOUBLE_EQ(utilization(m), 0.7);
    EXPECT_DOUBLE_EQ(utilization(AssociationMatrix{}), 0.0);
}

TEST(Metrics, EmpiricalCdf)
{
    const auto two = empirical_cdf({-10.0, -20.0});
    ASSERT_EQ(two.size(), 2u);
    EXPECT_DOUBLE_EQ(two[0].value, -20.0);
    EXPECT_DOUBLE_EQ(two[0].fraction, 0.5);
    EXPECT_DOUBLE_EQ(two[1].value, -10.0);
    EXPECT_DOUBLE_EQ(two[1].fraction, 1.0);

    const auto dup = empirical_cdf({1.0, 1.0, 2.0, 1.0});
    ASSERT_EQ(dup.size(), 2u);
    EXPECT_DOUBLE_EQ(dup[0].fraction, 0.75);

    EXPECT_TRUE(empirical_cdf({}).empty());
    EXPECT_THROW(empirical_cdf({std::nan("")}), std::invalid_argument);
    const auto with_inf = empirical_cdf({-std::numeric_limits<double>::infinity(), 0.0});
    EXPECT_DOUBLE_EQ(with_inf[0].fraction, 0.5);
}

TEST(Metrics, CdfIsMonotoneAndPermutationInvariant)
{
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(-20.0, 5.0);
    std::vector<double> samples(1000);
    for (double& v : samples) {
        v = std::round(g(rng) * 4.0) / 4.0;
    }
    const auto cdf = empirical_cdf(samples);
    for (std::size_t i = 1; i < cdf.size(); ++i) {
        EXPECT_LT(cdf[i - 1].value, cdf[i].value);
        EXPECT_LT(cdf[i - 1].fraction, cdf[i].fraction);
    }
    EXPECT_DOUBLE_EQ(cdf.back().fraction, 1.0);
    std::shuffle(samples.begin(), samples.end(), rng);
    const auto again = empirical_cdf(samples);
    ASSERT_EQ(again.size(), cdf.size());
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        EXPECT_EQ(again[i].value, cdf[i].value);
        EXPECT_EQ(again[i].fraction, cdf[i].fraction);
    }
    // The fraction at a value counts samples at or below it.
    const double probe = cdf[cdf.size() / 2].value;
    const auto below = std::count_if(samples.begin(), samples.end(), [&](double v) { return v <= probe; });
    EXPECT_DOUBLE_EQ(cdf[cdf.size() / 2].fraction, static_cast<double>(below) / samples.size());
}

TEST(Metrics, PerUserViolation)
{
    InrTrace trace;
    trace.num_users = 2;
    const double hi = db_to_linear(0.0);
    const double lo = db_to_linear(-30.0);
    const double rows[][2] = {{hi, lo}, {lo, lo}, {lo, hi}, {lo, hi}};
    for (const auto& r : rows) {
        trace.append(r);
    }
    const auto v = per_user_violation(trace, -12.2);
    EXPECT_DOUBLE_EQ(v[0], 0.25);
    EXPECT_DOUBLE_EQ(v[1], 0.5);
    InrTrace empty;
    empty.num_users = 3;
    EXPECT_EQ(per_user_violation(empty, 0.0), (std::vector<double>{0.0, 0.0, 0.0}));
}

TEST(Metrics, FractionAbove)
{
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    EXPECT_DOUBLE_EQ(fraction_above(v, 2.0), 0.5);
    EXPECT_DOUBLE_EQ(fraction_above(v, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(fraction_above({}, 0.0), 0.0);
}

}  // namespace
}  // namespace leocoex
