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

#include "leocoex/geometry.hpp"

namespace leocoex {

/// Parametric beam mask: quadratic main lobe (in dB), clipped below by a
/// side-lobe floor relative to peak and by an absolute far floor.
struct AntennaPattern {
    double peak_gain_dbi = 36.0;
    double beamwidth_3db_deg = 1.6;
    double sidelobe_floor_db = 30.0;  // below peak
    double far_floor_dbi = 0.0;

    void validate() const;

    /// Level of the flat region the main lobe decays into.
    double floor_dbi() const;

    /// Smallest off-boresight angle at which the floor is reached.
    double floor_angle_deg() const;
};

/// 64x64 satellite array.
AntennaPattern satellite_tx_pattern();

/// 32x32 user terminal array.
AntennaPattern user_rx_pattern();

/// Angle at `antenna_pos` between the directions to `boresight_target` and
/// `eval_point`, degrees in [0, 180].
double boresight_offset_angle(const Vec3& antenna_pos, const Vec3& boresight_target, const Vec3& eval_point);

/// Gain in dBi at `offset_deg` off boresight.
double pattern_gain(const AntennaPattern& pattern, double offset_deg);

/// Same as pattern_gain, in linear units, taking the cosine of the offset.
/// Skips the arccosine when the angle is past the floor.
class LinearPattern {
public:
    explicit LinearPattern(const AntennaPattern& pattern);

    double peak() const { return peak_; }
    double gain_from_cos(double cos_offset) const;

private:
    AntennaPattern pattern_;
    double peak_ = 1.0;
    double floor_ = 1.0;
    double floor_cos_ = 1.0;
};

}  // namespace leocoex
