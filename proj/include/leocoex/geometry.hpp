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

#include <algorithm>
#include <cmath>
#include <numbers>

namespace leocoex {

// Spherical Earth.
inline constexpr double kEarthRadiusM = 6371.0e3;
inline constexpr double kEarthMu = 3.986004418e14;          // m^3/s^2
inline constexpr double kEarthRotationRate = 7.2921159e-5;  // rad/s

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) { return v / norm(v); }

/// Angle between two non-zero vectors, degrees in [0, 180].
inline double angle_between_deg(const Vec3& a, const Vec3& b)
{
    const double c = dot(a, b) / (norm(a) * norm(b));
    return rad_to_deg(std::acos(std::clamp(c, -1.0, 1.0)));
}

struct LatLon {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
};

/// Point on (or above) the spherical Earth in ECEF metres.
Vec3 geodetic_to_ecef(LatLon p, double altitude_m = 0.0);

LatLon ecef_to_geodetic(const Vec3& p);

/// Inverse azimuthal-equidistant projection: the point reached from `origin`
/// after travelling `east_m` / `north_m` in the local tangent plane.
LatLon offset_latlon(LatLon origin, double east_m, double north_m);

/// Great-circle distance along the sphere surface.
double surface_distance_m(LatLon a, LatLon b);

}  // namespace leocoex
