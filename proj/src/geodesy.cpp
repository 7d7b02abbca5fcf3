#include "pfargeo/geodesy.hpp"

#include <cmath>

#include "pfargeo/errors.hpp"

namespace pfargeo {

namespace {
constexpr double kDegToRad = M_PI / 180.0;
constexpr double kRadToDeg = 180.0 / M_PI;
}  // namespace

EcefPoint llh_to_ecef(const LlhPoint& p) {
    const double lat = p.latitude * kDegToRad;
    const double lon = p.longitude * kDegToRad;
    const double sin_lat = std::sin(lat);
    const double cos_lat = std::cos(lat);

    // Radius of curvature in the prime vertical.
    const double n = wgs84::kSemiMajorAxis /
                     std::sqrt(1.0 - wgs84::kEccentricitySq * sin_lat * sin_lat);

    return {(n + p.height) * cos_lat * std::cos(lon),
            (n + p.height) * cos_lat * std::sin(lon),
            (n * (1.0 - wgs84::kEccentricitySq) + p.height) * sin_lat};
}

namespace {

// Vermeille, "Computing geodetic coordinates from geocentric coordinates",
// Journal of Geodesy 78 (2004). Closed form, sub-millimeter over the domain
// this library cares about. The latitude/height core is shared so that
// height_above_ellipsoid is bit-identical to ecef_to_llh(p).height without
// paying for the two atan2 calls in solver-scan inner loops.
struct VermeilleCore {
    double k;
    double d;
    double dz_dist;
};

VermeilleCore vermeille_core(const EcefPoint& pt) {
    const double a = wgs84::kSemiMajorAxis;
    const double e2 = wgs84::kEccentricitySq;
    const double e4 = e2 * e2;

    const double xy_sq = pt.x * pt.x + pt.y * pt.y;
    const double z = pt.z;

    if (xy_sq + z * z < 1.0) {
        throw GeometryError("ecef_to_llh: point within 1 m of Earth center is degenerate");
    }

    const double p = xy_sq / (a * a);
    const double q = (1.0 - e2) * z * z / (a * a);
    const double r = (p + q - e4) / 6.0;
    double s = e4 * p * q / (4.0 * r * r * r);
    // Rounding can push s infinitesimally negative on the polar axis.
    if (s >= -2.0 && s <= 0.0) s = 0.0;
    const double t = std::cbrt(1.0 + s + std::sqrt(s * (2.0 + s)));
    const double u = r * (1.0 + t + 1.0 / t);
    const double v = std::sqrt(u * u + e4 * q);
    const double w = e2 * (u + v - q) / (2.0 * v);
    const double k = std::sqrt(u + v + w * w) - w;
    const double d = k * std::sqrt(xy_sq) / (k + e2);
    return {k, d, std::sqrt(d * d + z * z)};
}

}  // namespace

LlhPoint ecef_to_llh(const EcefPoint& pt) {
    const double e2 = wgs84::kEccentricitySq;
    const VermeilleCore core = vermeille_core(pt);
    const double xy_dist = std::sqrt(pt.x * pt.x + pt.y * pt.y);

    LlhPoint out;
    out.latitude = 2.0 * std::atan2(pt.z, core.d + core.dz_dist) * kRadToDeg;
    out.longitude = (xy_dist < 1e-9) ? 0.0 : std::atan2(pt.y, pt.x) * kRadToDeg;
    out.height = (core.k + e2 - 1.0) / core.k * core.dz_dist;
    return out;
}

double height_above_ellipsoid(const EcefPoint& p) {
    const double e2 = wgs84::kEccentricitySq;
    const VermeilleCore core = vermeille_core(p);
    return (core.k + e2 - 1.0) / core.k * core.dz_dist;
}

}  // namespace pfargeo
