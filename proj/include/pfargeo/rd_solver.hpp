#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "pfargeo/geodesy.hpp"
#include "pfargeo/orbit.hpp"
#include "pfargeo/pfa_model.hpp"
#include "pfargeo/vec3.hpp"

namespace pfargeo {

/// Gridded heights above the WGS-84 ellipsoid, row-major with the first
/// sample at (lat0, lon0) and per-pixel steps (dlat, dlon) in degrees.
class DemRaster {
public:
    DemRaster(std::vector<float> heights, int rows, int cols, double lat0, double lon0,
              double dlat, double dlon, std::optional<float> nodata = std::nullopt);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double lat0() const { return lat0_; }
    double lon0() const { return lon0_; }
    double dlat() const { return dlat_; }
    double dlon() const { return dlon_; }
    std::optional<float> nodata() const { return nodata_; }
    const std::vector<float>& heights() const { return heights_; }

    /// Mean of the valid samples; the fixed-point iteration starts here.
    double mean_height() const { return mean_height_; }

    /// Bilinear height at a geodetic point. Throws GeometryError when the
    /// point falls outside the raster or any contributing sample is nodata
    /// (nodata never silently becomes 0).
    double sample(double lat_deg, double lon_deg) const;

private:
    std::vector<float> heights_;
    int rows_;
    int cols_;
    double lat0_;
    double lon0_;
    double dlat_;
    double dlon_;
    std::optional<float> nodata_;
    double mean_height_;
};

/// Constant height-above-ellipsoid surface.
struct ConstantHae {
    double height = 0.0;
};

/// Mapping surface: constant HAE or a DEM.
using Surface = std::variant<ConstantHae, DemRaster>;

/// Residuals of one Range-Doppler solve; populated on every success.
struct SolveDiagnostics {
    double range_residual = 0.0;   ///< |P - R_sat| - R, meters
    double rdot_residual = 0.0;    ///< V.(R_sat - P)/R - Rdot, m/s
    double height_residual = 0.0;  ///< surface height mismatch, meters
    int iterations = 0;
};

struct SurfaceSolution {
    EcefPoint point;
    SolveDiagnostics diagnostics;
};

/// Project (R, Rdot) to the constant-height surface seen from `state`.
///
/// The unit lines of sight satisfying the Doppler equation form a circle on
/// the cone around the velocity vector; the circle is parameterized by an
/// angle and the height-above-ellipsoid residual is driven to zero by
/// bracketed 1-D root finding. The branch is selected by look side: the
/// returned point P satisfies sign((V x (P - R_sat)) . R_sat) >= 0 for Left
/// and <= 0 for Right.
///
/// Throws NoSolutionError when the cone circle never meets the surface and
/// GeometryError when |rdot| >= |velocity| (no Doppler cone exists).
SurfaceSolution rrdot_to_surface(const StateVector& state, const RangeDoppler& rd,
                                 double surface_height, LookSide look);

/// Grid-loop variant: `psi_hint` is the cone angle of a previously found
/// neighboring solution and skips the full bracketing scan when it still
/// brackets the root. `psi_out` receives the solved cone angle.
SurfaceSolution rrdot_to_surface_ex(const StateVector& state, const RangeDoppler& rd,
                                    double surface_height, LookSide look,
                                    std::optional<double> psi_hint,
                                    double* psi_out = nullptr);

/// Project (R, Rdot) to a DEM by plain fixed-point iteration on the surface
/// height, starting from the DEM mean: solve at h_k, look the height up at
/// the solution, repeat until the height moves < 0.1 m (25 iteration cap).
SurfaceSolution rrdot_to_dem(const StateVector& state, const RangeDoppler& rd,
                             const DemRaster& dem, LookSide look);

/// Dispatch over the surface variant.
SurfaceSolution rrdot_to_ground(const StateVector& state, const RangeDoppler& rd,
                                const Surface& surface, LookSide look);

/// Residual triple for an arbitrary candidate point (diagnostic helper).
/// The height residual is computed against `surface_height` when given,
/// otherwise reported as 0.
SolveDiagnostics solve_residuals(const StateVector& state, const RangeDoppler& rd,
                                 const EcefPoint& p,
                                 std::optional<double> surface_height = std::nullopt);

}  // namespace pfargeo
