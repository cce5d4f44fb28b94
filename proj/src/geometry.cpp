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

#include "leocoex/geometry.hpp"

namespace leocoex {

Vec3 geodetic_to_ecef(LatLon p, double altitude_m)
{
    const double lat = deg_to_rad(p.lat_deg);
    const double lon = deg_to_rad(p.lon_deg);
    const double r = kEarthRadiusM + altitude_m;
    return {r * std::cos(lat) * std::cos(lon), r * std::cos(lat) * std::sin(lon), r * std::sin(lat)};
}

LatLon ecef_to_geodetic(const Vec3& p)
{
    const double r = norm(p);
    return {rad_to_deg(std::asin(std::clamp(p.z / r, -1.0, 1.0))), rad_to_deg(std::atan2(p.y, p.x))};
}

LatLon offset_latlon(LatLon origin, double east_m, double north_m)
{
    const double dist = std::hypot(east_m, north_m);
    if (dist == 0.0) {
        return origin;
    }
    const double delta = dist / kEarthRadiusM;
    const double bearing = std::atan2(east_m, north_m);
    const double lat1 = deg_to_rad(origin.lat_deg);
    const double lon1 = deg_to_rad(origin.lon_deg);

    const double lat2 = std::asin(std::sin(lat1) * std::cos(delta) +
                                  std::cos(lat1) * std::sin(delta) * std::cos(bearing));
    const double lon2 = lon1 + std::atan2(std::sin(bearing) * std::sin(delta) * std::cos(lat1),
                                          std::cos(delta) - std::sin(lat1) * std::sin(lat2));
    return {rad_to_deg(lat2), rad_to_deg(lon2)};
}

double surface_distance_m(LatLon a, LatLon b)
{
    const Vec3 pa = geodetic_to_ecef(a);
    const Vec3 pb = geodetic_to_ecef(b);
    return kEarthRadiusM * deg_to_rad(angle_between_deg(pa, pb));
}

}  // namespace leocoex
