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

#include "leocoex/antenna.hpp"

#include <stdexcept>

#include "leocoex/units.hpp"

namespace leocoex {

void AntennaPattern::validate() const
{
    if (!(peak_gain_dbi > 0.0)) {
        throw std::invalid_argument("antenna peak gain must be positive");
    }
    if (!(beamwidth_3db_deg > 0.0)) {
        throw std::invalid_argument("antenna 3 dB beamwidth must be positive");
    }
    if (!(sidelobe_floor_db > 3.0)) {
        throw std::invalid_argument("antenna side-lobe floor must sit more than 3 dB below peak");
    }
    if (!(far_floor_dbi <= peak_gain_dbi)) {
        throw std::invalid_argument("antenna far floor must not exceed the peak gain");
    }
}

double AntennaPattern::floor_dbi() const
{
    return std::max(peak_gain_dbi - sidelobe_floor_db, far_floor_dbi);
}

double AntennaPattern::floor_angle_deg() const
{
    const double drop = peak_gain_dbi - floor_dbi();
    return beamwidth_3db_deg * std::sqrt(drop / 12.0);
}

AntennaPattern satellite_tx_pattern()
{
    return {36.0, 1.6, 30.0, 0.0};
}

AntennaPattern user_rx_pattern()
{
    return {30.0, 3.2, 30.0, 0.0};
}

double boresight_offset_angle(const Vec3& antenna_pos, const Vec3& boresight_target, const Vec3& eval_point)
{
    const Vec3 a = boresight_target - antenna_pos;
    const Vec3 b = eval_point - antenna_pos;
    if (dot(a, a) == 0.0 || dot(b, b) == 0.0) {
        throw std::invalid_argument("boresight offset needs points distinct from the antenna");
    }
    return angle_between_deg(a, b);
}

double pattern_gain(const AntennaPattern& pattern, double offset_deg)
{
    const double x = offset_deg / pattern.beamwidth_3db_deg;
    return std::max(pattern.peak_gain_dbi - 12.0 * x * x, pattern.floor_dbi());
}

LinearPattern::LinearPattern(const AntennaPattern& pattern)
    : pattern_(pattern),
      peak_(db_to_linear(pattern.peak_gain_dbi)),
      floor_(db_to_linear(pattern.floor_dbi())),
      floor_cos_(std::cos(deg_to_rad(std::min(pattern.floor_angle_deg(), 180.0))))
{
}

double LinearPattern::gain_from_cos(double cos_offset) const
{
    if (cos_offset < floor_cos_) {
        return floor_;
    }
    const double theta = rad_to_deg(std::acos(std::min(cos_offset, 1.0)));
    return db_to_linear(pattern_gain(pattern_, theta));
}

}  // namespace leocoex
