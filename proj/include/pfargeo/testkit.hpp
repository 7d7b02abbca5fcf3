#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pfargeo/orbit.hpp"
#include "pfargeo/pfa_model.hpp"
#include "pfargeo/sicd_meta.hpp"

namespace pfargeo::testkit {

/// Canned, physically consistent constant-t_COA geometries.
enum class ScenePreset {
    EquatorialNadirOffset,  ///< equatorial orbit, broadside, modest incidence
    MidLatitudeSquint,      ///< inclined orbit, squinted collection
    HighIncidence,          ///< low orbit, far-off-nadir look
};

ScenePreset preset_from_index(int index);
std::string preset_name(ScenePreset preset);

/// Ground point carried with its exact Range-Doppler truth.
struct Probe {
    ImageIndex pixel;
    ImageCoord coord;
    RangeDoppler rrdot;
    EcefPoint ground;  ///< on the scene surface, consistent with rrdot
};

/// A complete synthetic scene: analytic orbit, the SICD metadata subset
/// built from it, the constants the generator chose, and probe points whose
/// (R, Rdot, pixel) truth was computed by direct geometry (no solver code).
struct SyntheticScene {
    Orbit orbit;
    SicdMeta meta;
    PfaConstants truth;  ///< the generator's own constant set
    std::vector<Probe> probes;
    double surface_height = 0.0;
};

SyntheticScene make_synthetic_scene(std::uint64_t seed, ScenePreset preset,
                                    int probe_count = 200);

/// Independent Range-Doppler projection: dense scan of the full cone circle
/// at 1e-5 rad, side selected by the sign of (V x (P - R_sat)) . R_sat,
/// refined by pure bisection to 1e-10 rad. Shares only the geodesy
/// conversions with the library solver. Throws NoSolutionError when no
/// bracketing sign change exists on the requested side.
EcefPoint brute_force_rrdot(const StateVector& state, const RangeDoppler& rd, double height,
                            LookSide look);

/// Central-difference range rate of a target seen from the orbit at eta.
double finite_diff_rdot(const Orbit& orbit, const EcefPoint& target, double eta,
                        double h = 1e-3);

/// Randomized solver case in realistic imaging geometry: platform on a
/// 550-650 km shell, target on the surface inside the cross-track wedge
/// (|along-track| <= |cross-track|), which bounds the squint the way real
/// Spotlight collects do and keeps the Doppler circle transverse to the
/// surface at the solution.
struct SolverCase {
    StateVector state;
    EcefPoint target;
    RangeDoppler rrdot;
    double height = 0.0;  ///< surface height of the target
    LookSide look = LookSide::Right;
};

SolverCase random_solver_case(std::uint64_t seed);

/// Analytic circular-orbit generator used by scene construction and the
/// orbit interpolation tests.
struct CircularOrbit {
    double radius = 7.0e6;     ///< meters from Earth center
    double speed = 7.5e3;      ///< m/s
    Vec3 plane_x{1, 0, 0};     ///< unit vector toward the t=t_ref position
    Vec3 plane_y{0, 1, 0};     ///< unit vector toward the t=t_ref velocity
    double t_ref = 0.0;

    StateVector state_at(double t) const;
    Orbit sample(double t_begin, double t_end, double spacing) const;
};

}  // namespace pfargeo::testkit
