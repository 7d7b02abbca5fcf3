#pragma once

#include <optional>

#include "pfargeo/orbit.hpp"
#include "pfargeo/rd_solver.hpp"

namespace pfargeo {

/// Zero-Doppler output grid: range samples r0 + dr*row, azimuth lines at
/// times t0 + dt*line (dt may be negative for time-reversed line ordering).
struct ZeroDopplerGrid {
    double r0 = 0.0;  ///< near range, m
    double dr = 0.0;  ///< m/pixel, > 0
    double t0 = 0.0;  ///< first azimuth time, s
    double dt = 0.0;  ///< s/line, != 0
    int rows = 0;     ///< range samples
    int lines = 0;    ///< azimuth lines
    Orbit orbit;
    double wavelength = 0.0;
    LookSide look_side = LookSide::Right;

    double time_of_line(double line) const { return t0 + dt * line; }
    double range_of_row(double row) const { return r0 + dr * row; }
};

/// Zero-Doppler image coordinates of a ground point.
struct ZdSolution {
    double eta = 0.0;  ///< zero-Doppler azimuth time, s
    double r = 0.0;    ///< slant range at eta, m
};

/// Solve V_sat(eta) . (R_sat(eta) - T) = 0 for the zero-Doppler azimuth time
/// by Newton iteration safeguarded with bisection on a bracketing interval
/// grown geometrically from the guess (mid-span when omitted). The solution
/// satisfies |g| / (|V| |R_sat - T|) < 1e-12. Throws GeometryError when no
/// bracket exists inside the orbit span.
ZdSolution zd_inverse_map(const Orbit& orbit, const EcefPoint& target,
                          std::optional<double> eta_guess = std::nullopt);

/// Forward map one grid pixel to the ground: interpolate the state at the
/// line time and project (r0 + dr*row, rdot = 0) onto the surface.
SurfaceSolution zd_forward_map(const ZeroDopplerGrid& grid, const ImageIndex& index,
                               const Surface& surface);

}  // namespace pfargeo
