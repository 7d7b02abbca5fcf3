#pragma once

#include <vector>

#include "pfargeo/geodesy.hpp"
#include "pfargeo/orbit.hpp"
#include "pfargeo/sicd_meta.hpp"
#include "pfargeo/vec3.hpp"

namespace pfargeo {

/// The quantities that are constant across a constant-t_COA Spotlight PFA
/// image: the platform state at the center of aperture, the SCP range and
/// range rate, the polar angle and scale factor with their rates, and the
/// radar wavelength.
struct PfaConstants {
    EcefPoint arp_pos;    ///< platform position at COA
    Vec3 arp_vel;         ///< platform velocity at COA, m/s
    double r_scp = 0.0;   ///< slant range to SCP, m
    double rdot_scp = 0.0;  ///< range rate at SCP, m/s
    double theta_coa = 0.0;   ///< polar angle, rad
    double dtheta_dt = 0.0;   ///< rad/s
    double ksf = 1.0;         ///< polar aperture scale factor
    double dksf_dtheta = 0.0;  ///< 1/rad
    double t_coa = 0.0;       ///< seconds
    double wavelength = 0.0;  ///< m
    LookSide look_side = LookSide::Right;
};

/// The 2x2 matrix mapping metric image coordinates (rg, az) to offsets from
/// (r_scp, rdot_scp) in Range-Doppler space, plus those offsets.
struct AffineModel {
    double a11 = 0.0;  ///< dimensionless
    double a12 = 0.0;  ///< dimensionless
    double a21 = 0.0;  ///< 1/s
    double a22 = 0.0;  ///< 1/s
    double r_scp = 0.0;
    double rdot_scp = 0.0;

    double det() const { return a11 * a22 - a12 * a21; }
};

/// Metric image coordinates relative to the SCP.
struct ImageCoord {
    double rg = 0.0;  ///< meters, range direction
    double az = 0.0;  ///< meters, azimuth direction
};

/// Fractional pixel address.
struct ImageIndex {
    double row = 0.0;  ///< range direction
    double col = 0.0;  ///< azimuth direction
};

/// Slant range / range-rate pair, the common currency between the PFA and
/// Range-Doppler frameworks.
struct RangeDoppler {
    double r = 0.0;     ///< meters, > 0
    double rdot = 0.0;  ///< m/s
};

/// Per-azimuth-line decomposition: along one line both R and Rdot are exactly
/// degree-1 in the range coordinate, and the platform state is shared.
struct ScanlineModel {
    double r0 = 0.0;     ///< meters
    double dr = 0.0;     ///< meters per meter of rg
    double rdot0 = 0.0;  ///< m/s
    double drdot = 0.0;  ///< (m/s) per meter of rg
    StateVector state;

    RangeDoppler at(double rg) const { return {r0 + dr * rg, rdot0 + drdot * rg}; }
};

/// Pixel binding: ties fractional indices to metric image coordinates.
struct GridInfo {
    double scp_row = 0.0;
    double scp_col = 0.0;
    double row_spacing = 0.0;  ///< meters/pixel, > 0
    double col_spacing = 0.0;  ///< meters/pixel, > 0
    int rows = 0;
    int cols = 0;
    EcefPoint scp_ecef;
    double scp_height = 0.0;  ///< meters above ellipsoid
};

/// Returns the constant COA time iff the metadata's 2-D time-of-COA
/// polynomial is constant: every non-constant coefficient, scaled by the
/// image half-extent in meters, must stay below 1e-9 s. Throws GeometryError
/// otherwise (only the constant-t_COA Spotlight case is supported).
double validate_constant_tcoa(const SicdMeta& meta);

/// Largest |coefficient| * half_extent^order over the non-constant terms of
/// the time-of-COA polynomial, in seconds. Zero for a truly constant
/// polynomial; `info` reports it for rejected images.
double tcoa_max_deviation(const SicdMeta& meta);

/// Evaluate the constant set at t_COA from validated metadata. Explicit COA
/// position/velocity fields win over the ARP polynomial when present; a
/// disagreement above 1 m or 1e-3 m/s appends a consistency warning.
PfaConstants derive_pfa_constants(const SicdMeta& meta,
                                  std::vector<std::string>* warnings = nullptr);

/// Build the affine matrix from the constants:
///   a11 = KSF cos(theta)            a12 = KSF sin(theta)
///   a21 = (KSF' cos - KSF sin) dtheta/dt
///   a22 = (KSF' sin + KSF cos) dtheta/dt
/// Throws GeometryError when the determinant is degenerate.
AffineModel compute_affine(const PfaConstants& k);

/// Forward affine map (image coordinates to Range-Doppler).
RangeDoppler image_to_rrdot(const AffineModel& m, const ImageCoord& c);

/// Exact 2x2 inverse of image_to_rrdot. Throws GeometryError when singular.
ImageCoord rrdot_to_image(const AffineModel& m, const RangeDoppler& rd);

/// Scanline decomposition at a fixed azimuth coordinate. The returned state
/// is identical for every az: that is the constant-t_COA property.
ScanlineModel scanline_model(const AffineModel& m, const PfaConstants& k, double az);

/// Doppler frequency from range rate: f_dop = -2 rdot / wavelength.
double rdot_to_doppler(double rdot, double wavelength);

ImageCoord index_to_coord(const GridInfo& g, const ImageIndex& i);
ImageIndex coord_to_index(const GridInfo& g, const ImageCoord& c);

/// Pixel binding extracted from metadata.
GridInfo grid_from_meta(const SicdMeta& meta);

}  // namespace pfargeo
