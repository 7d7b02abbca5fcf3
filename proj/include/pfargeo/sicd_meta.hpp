#pragma once

#include <optional>
#include <string>

#include "pfargeo/geodesy.hpp"
#include "pfargeo/orbit.hpp"
#include "pfargeo/polynomial.hpp"
#include "pfargeo/vec3.hpp"

namespace pfargeo {

enum class LookSide { Left, Right };

inline char look_side_char(LookSide s) { return s == LookSide::Left ? 'L' : 'R'; }

/// Explicit platform state at the center-of-aperture time.
struct CoaState {
    EcefPoint position;
    Vec3 velocity;

    bool operator==(const CoaState&) const = default;
};

/// The SICD metadata subset this library consumes. Populated from either the
/// SICD XML or the JSON sidecar; both carry exactly these fields.
struct SicdMeta {
    EcefPoint scp_ecef;
    LlhPoint scp_llh;
    double scp_row = 0.0;  ///< SCP pixel, range direction
    double scp_col = 0.0;  ///< SCP pixel, azimuth direction
    int rows = 0;
    int cols = 0;
    double row_spacing = 0.0;  ///< meters/pixel
    double col_spacing = 0.0;  ///< meters/pixel
    Poly2D time_coa_poly;          ///< seconds as a function of (rg, az) meters
    Polynomial1D polar_ang_poly;   ///< radians as a function of time
    Polynomial1D spatial_freq_sf_poly;  ///< dimensionless, function of polar angle
    Polynomial1D arp_poly_x;       ///< ECEF meters as a function of time
    Polynomial1D arp_poly_y;
    Polynomial1D arp_poly_z;
    std::optional<CoaState> coa_state;
    double center_frequency = 0.0;  ///< hertz
    LookSide side_of_track = LookSide::Right;
    std::optional<std::string> collect_start;

    bool operator==(const SicdMeta&) const = default;
};

/// Parse the SICD XML subset. Element matching is namespace-agnostic (local
/// names only). Throws MetadataError naming the first missing mandatory path,
/// and for products whose formation is not PFA.
SicdMeta parse_sicd_xml(const std::string& text);

/// Parse the JSON sidecar (schema documented in the README).
SicdMeta parse_meta_json(const std::string& text);

/// Serialize to the JSON sidecar; parse_meta_json(meta_to_json(m)) == m.
std::string meta_to_json(const SicdMeta& m);

/// Dispatch on content: leading '<' selects XML, otherwise JSON.
SicdMeta parse_meta_auto(const std::string& text);

/// Distance between the metadata's stated SCP ECEF and the ECEF implied by
/// its SCP LLH; used for the consistency warning in `info`.
double scp_consistency_distance(const SicdMeta& m);

/// Sample the ARP position polynomial (velocity from its derivative) into an
/// Orbit over [t_center - half_window, t_center + half_window].
Orbit orbit_from_arp_poly(const SicdMeta& m, double t_center, double half_window,
                          double spacing = 1.0);

}  // namespace pfargeo
