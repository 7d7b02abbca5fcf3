#pragma once

#include "pfargeo/vec3.hpp"

namespace pfargeo {

/// Earth-Centered-Earth-Fixed point, meters.
using EcefPoint = Vec3;

/// Geodetic point on the WGS-84 ellipsoid.
struct LlhPoint {
    double latitude = 0.0;   ///< geodetic degrees, [-90, 90]
    double longitude = 0.0;  ///< degrees, [-180, 180)
    double height = 0.0;     ///< meters above the WGS-84 ellipsoid

    bool operator==(const LlhPoint&) const = default;
};

namespace wgs84 {
// WGS-84 defining constants. Hard numbers from the standard.
inline constexpr double kSemiMajorAxis = 6378137.0;
inline constexpr double kInverseFlattening = 298.257223563;
inline constexpr double kFlattening = 1.0 / kInverseFlattening;
inline constexpr double kEccentricitySq = kFlattening * (2.0 - kFlattening);
inline constexpr double kSemiMinorAxis = kSemiMajorAxis * (1.0 - kFlattening);
}  // namespace wgs84

/// Exact speed of light, m/s.
inline constexpr double kSpeedOfLight = 299792458.0;

/// Closed-form geodetic -> ECEF conversion.
EcefPoint llh_to_ecef(const LlhPoint& p);

/// ECEF -> geodetic conversion (Vermeille 2004 closed form).
/// Longitude at the poles is reported as 0. Throws GeometryError for
/// degenerate points within 1 m of the Earth center.
LlhPoint ecef_to_llh(const EcefPoint& p);

/// Height above the WGS-84 ellipsoid; equals ecef_to_llh(p).height.
double height_above_ellipsoid(const EcefPoint& p);

}  // namespace pfargeo
