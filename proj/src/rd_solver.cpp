#include "pfargeo/rd_solver.hpp"

#include <cmath>
#include <sstream>

#include "pfargeo/errors.hpp"

namespace pfargeo {

namespace {

constexpr int kScanIntervals = 128;        // bracketing scan over [0, pi]
constexpr double kHeightTolMeters = 1e-6;  // root-finder convergence
constexpr double kGridAcceptMeters = 1e-8;  // scan point already on the surface
constexpr double kPsiWidthTol = 1e-13;     // rad, safeguard stop
constexpr int kMaxRootIters = 200;
constexpr double kHintHalfWidth = 0.05;  // rad, local bracket around a hint
constexpr int kDemMaxIters = 25;
constexpr double kDemTolMeters = 0.1;

/// Geometry of the Doppler-cone circle: unit lines of sight u with
/// V.(-u) = Rdot and |u| = 1, parameterized as
///   u(psi) = c vhat + s (cos(psi) e1 + side sin(psi) e2),  psi in [0, pi],
/// where c = -Rdot/|V|, s = sqrt(1 - c^2), e1 points from the platform
/// toward the Earth center (projected orthogonal to vhat) and e2 = vhat x e1.
/// With this basis sign((V x (P - R_sat)) . R_sat) = side * sign(sin psi),
/// so psi in (0, pi) stays on the requested look side.
struct ConeCircle {
    Vec3 base;    // R * c * vhat
    Vec3 leg1;    // R * s * e1
    Vec3 leg2;    // R * s * side * e2
    EcefPoint platform;

    EcefPoint point(double psi) const {
        const double cp = std::cos(psi);
        const double sp = std::sin(psi);
        return platform + base + cp * leg1 + sp * leg2;
    }
};

ConeCircle make_cone_circle(const StateVector& state, const RangeDoppler& rd, LookSide look) {
    const double vmag = norm(state.velocity);
    if (!(vmag > 0.0)) {
        throw GeometryError("rrdot_to_surface: zero platform velocity");
    }
    if (!(rd.r > 0.0)) {
        throw GeometryError("rrdot_to_surface: non-positive slant range");
    }
    const double c = -rd.rdot / vmag;
    if (std::abs(c) > 1.0) {
        throw GeometryError("invalid Doppler cone: |rdot| exceeds platform speed");
    }
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));

    const Vec3 vhat = state.velocity / vmag;
    const Vec3 d = state.position - dot(state.position, vhat) * vhat;
    const double dmag = norm(d);
    if (dmag < 1.0) {
        throw GeometryError("degenerate geometry: velocity aligned with the position vector");
    }
    const Vec3 e1 = d / (-dmag);
    const Vec3 e2 = cross(vhat, e1);
    const double side = (look == LookSide::Left) ? 1.0 : -1.0;

    ConeCircle circle;
    circle.base = (rd.r * c) * vhat;
    circle.leg1 = (rd.r * s) * e1;
    circle.leg2 = (rd.r * s * side) * e2;
    circle.platform = state.position;
    return circle;
}

struct RootResult {
    double psi = 0.0;
    double f = 0.0;
    int iterations = 0;
};

/// Safeguarded secant/bisection on f over a bracket with f(lo)*f(hi) <= 0.
RootResult refine_root(const ConeCircle& circle, double surface_height, double lo, double flo,
                       double hi, double fhi) {
    RootResult out;
    double psi = lo;
    double f = flo;
    for (int iter = 0; iter < kMaxRootIters; ++iter) {
        double trial;
        if (fhi != flo) {
            trial = hi - fhi * (hi - lo) / (fhi - flo);
        } else {
            trial = 0.5 * (lo + hi);
        }
        if (!(trial > lo && trial < hi)) {
            trial = 0.5 * (lo + hi);
        }
        psi = trial;
        f = height_above_ellipsoid(circle.point(psi)) - surface_height;
        out.iterations = iter + 1;
        if (std::abs(f) < kHeightTolMeters || (hi - lo) < kPsiWidthTol) {
            break;
        }
        if ((f > 0.0) == (fhi > 0.0)) {
            hi = psi;
            fhi = f;
        } else {
            lo = psi;
            flo = f;
        }
    }
    out.psi = psi;
    out.f = f;
    return out;
}

SurfaceSolution finish(const StateVector& state, const RangeDoppler& rd, double surface_height,
                       const ConeCircle& circle, const RootResult& root, double* psi_out) {
    if (psi_out) *psi_out = root.psi;
    const EcefPoint p = circle.point(root.psi);
    SolveDiagnostics diag = solve_residuals(state, rd, p, surface_height);
    diag.iterations = root.iterations;
    return {p, diag};
}

/// Locate a tangency extremum of f by bisecting its central-difference
/// derivative. Near a graze the height value is quadratic in psi and cannot
/// pin the extremum, but f' crosses zero cleanly there.
template <typename F>
double refine_extremum(const F& f, double lo, double hi) {
    const double h = 1e-6;
    auto fprime = [&](double psi) { return (f(psi + h) - f(psi - h)) / (2.0 * h); };
    double dlo = fprime(lo);
    double dhi = fprime(hi);
    if (dlo * dhi > 0.0) {
        return std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
    }
    for (int i = 0; i < 60 && (hi - lo) > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double dm = fprime(mid);
        if (dlo * dm <= 0.0) {
            hi = mid;
            dhi = dm;
        } else {
            lo = mid;
            dlo = dm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

SurfaceSolution rrdot_to_surface(const StateVector& state, const RangeDoppler& rd,
                                 double surface_height, LookSide look) {
    return rrdot_to_surface_ex(state, rd, surface_height, look, std::nullopt, nullptr);
}

SurfaceSolution rrdot_to_surface_ex(const StateVector& state, const RangeDoppler& rd,
                                    double surface_height, LookSide look,
                                    std::optional<double> psi_hint, double* psi_out) {
    const ConeCircle circle = make_cone_circle(state, rd, look);

    auto f_at = [&](double psi) {
        return height_above_ellipsoid(circle.point(psi)) - surface_height;
    };

    // Fast path: a neighboring pixel's cone angle usually still brackets the
    // root. Fall through to the full scan when it does not.
    if (psi_hint) {
        const double lo = std::max(0.0, *psi_hint - kHintHalfWidth);
        const double hi = std::min(M_PI, *psi_hint + kHintHalfWidth);
        const double flo = f_at(lo);
        const double fhi = f_at(hi);
        if (flo == 0.0) {
            return finish(state, rd, surface_height, circle, {lo, flo, 0}, psi_out);
        }
        if (flo * fhi < 0.0) {
            const RootResult root = refine_root(circle, surface_height, lo, flo, hi, fhi);
            return finish(state, rd, surface_height, circle, root, psi_out);
        }
    }

    // Bracketing scan over the half circle on the requested side. For a
    // convex surface the height is monotone in psi, so at most one root.
    double prev_psi = 0.0;
    double prev_f = f_at(0.0);
    double min_f = prev_f, max_f = prev_f;
    double best_psi = 0.0;
    double best_abs = std::abs(prev_f);
    if (std::abs(prev_f) < kGridAcceptMeters) {
        return finish(state, rd, surface_height, circle, {0.0, prev_f, 0}, psi_out);
    }
    for (int i = 1; i <= kScanIntervals; ++i) {
        const double psi = M_PI * static_cast<double>(i) / kScanIntervals;
        const double f = f_at(psi);
        if (std::abs(f) < kGridAcceptMeters) {
            return finish(state, rd, surface_height, circle, {psi, f, i}, psi_out);
        }
        if (prev_f * f < 0.0) {
            const RootResult root =
                refine_root(circle, surface_height, prev_psi, prev_f, psi, f);
            return finish(state, rd, surface_height, circle, root, psi_out);
        }
        min_f = std::min(min_f, f);
        max_f = std::max(max_f, f);
        if (std::abs(f) < best_abs) {
            best_abs = std::abs(f);
            best_psi = psi;
        }
        prev_psi = psi;
        prev_f = f;
    }

    // No sign change at scan resolution: either a graze, a sub-grid dip, or
    // a true miss. Polish the closest extremum before deciding.
    const double half_step = M_PI / kScanIntervals;
    const double lo = std::max(0.0, best_psi - half_step);
    const double hi = std::min(M_PI, best_psi + half_step);
    const double psi_ext = refine_extremum(f_at, lo, hi);
    const double f_ext = f_at(psi_ext);
    if (std::abs(f_ext) < kHeightTolMeters) {
        return finish(state, rd, surface_height, circle,
                      {psi_ext, f_ext, kScanIntervals}, psi_out);
    }
    if (f_ext * min_f < 0.0 || f_ext * max_f < 0.0) {
        // The dip crosses the surface between scan points; take the first
        // crossing in psi order.
        const double f_lo_edge = f_at(lo);
        const RootResult root =
            (f_lo_edge * f_ext < 0.0)
                ? refine_root(circle, surface_height, lo, f_lo_edge, psi_ext, f_ext)
                : refine_root(circle, surface_height, psi_ext, f_ext, hi, f_at(hi));
        return finish(state, rd, surface_height, circle, root, psi_out);
    }
    min_f = std::min(min_f, f_ext);
    max_f = std::max(max_f, f_ext);

    std::ostringstream os;
    os << "no cone/surface intersection at height " << surface_height
       << " m: height residual spans [" << min_f << ", " << max_f << "] m"
       << (min_f > 0.0 ? " (range shorter than the distance to the surface)" : "");
    throw NoSolutionError(os.str());
}

SurfaceSolution rrdot_to_dem(const StateVector& state, const RangeDoppler& rd,
                             const DemRaster& dem, LookSide look) {
    double h = dem.mean_height();
    double psi = 0.0;
    std::optional<double> hint;
    SurfaceSolution sol;
    for (int iter = 0; iter < kDemMaxIters; ++iter) {
        sol = rrdot_to_surface_ex(state, rd, h, look, hint, &psi);
        hint = psi;
        const LlhPoint llh = ecef_to_llh(sol.point);
        const double h_dem = dem.sample(llh.latitude, llh.longitude);
        const double dh = h_dem - h;
        h = h_dem;
        if (std::abs(dh) < kDemTolMeters) {
            sol = rrdot_to_surface_ex(state, rd, h, look, hint, &psi);
            const LlhPoint final_llh = ecef_to_llh(sol.point);
            sol.diagnostics.height_residual =
                final_llh.height - dem.sample(final_llh.latitude, final_llh.longitude);
            sol.diagnostics.iterations = iter + 1;
            return sol;
        }
    }
    std::ostringstream os;
    os << "DEM projection did not converge in " << kDemMaxIters
       << " iterations (last residuals: range " << sol.diagnostics.range_residual << " m, rdot "
       << sol.diagnostics.rdot_residual << " m/s, height step " << sol.diagnostics.height_residual
       << " m)";
    throw GeometryError(os.str());
}

SurfaceSolution rrdot_to_ground(const StateVector& state, const RangeDoppler& rd,
                                const Surface& surface, LookSide look) {
    if (const auto* flat = std::get_if<ConstantHae>(&surface)) {
        return rrdot_to_surface(state, rd, flat->height, look);
    }
    return rrdot_to_dem(state, rd, std::get<DemRaster>(surface), look);
}

SolveDiagnostics solve_residuals(const StateVector& state, const RangeDoppler& rd,
                                 const EcefPoint& p, std::optional<double> surface_height) {
    SolveDiagnostics diag;
    const Vec3 to_platform = state.position - p;
    const double dist = norm(to_platform);
    diag.range_residual = dist - rd.r;
    diag.rdot_residual = dot(state.velocity, to_platform) / dist - rd.rdot;
    diag.height_residual = surface_height ? height_above_ellipsoid(p) - *surface_height : 0.0;
    return diag;
}

DemRaster::DemRaster(std::vector<float> heights, int rows, int cols, double lat0, double lon0,
                     double dlat, double dlon, std::optional<float> nodata)
    : heights_(std::move(heights)),
      rows_(rows),
      cols_(cols),
      lat0_(lat0),
      lon0_(lon0),
      dlat_(dlat),
      dlon_(dlon),
      nodata_(nodata),
      mean_height_(0.0) {
    if (rows_ <= 0 || cols_ <= 0 ||
        heights_.size() != static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_)) {
        throw GeometryError("DemRaster: dimensions do not match the sample count");
    }
    if (dlat_ == 0.0 || dlon_ == 0.0) {
        throw GeometryError("DemRaster: zero pixel spacing");
    }
    double sum = 0.0;
    std::size_t n = 0;
    for (float v : heights_) {
        if (nodata_ && v == *nodata_) continue;
        if (!std::isfinite(v)) {
            throw GeometryError("DemRaster: non-finite height sample that is not nodata");
        }
        sum += v;
        ++n;
    }
    if (n == 0) {
        throw GeometryError("DemRaster: all samples are nodata");
    }
    mean_height_ = sum / static_cast<double>(n);
}

double DemRaster::sample(double lat_deg, double lon_deg) const {
    const double fi = (lat_deg - lat0_) / dlat_;
    const double fj = (lon_deg - lon0_) / dlon_;
    if (!(fi >= 0.0 && fi <= rows_ - 1 && fj >= 0.0 && fj <= cols_ - 1)) {
        std::ostringstream os;
        os << "DEM does not cover (" << lat_deg << ", " << lon_deg << ") deg";
        throw GeometryError(os.str());
    }
    int i0 = static_cast<int>(fi);
    int j0 = static_cast<int>(fj);
    if (i0 == rows_ - 1) --i0;
    if (j0 == cols_ - 1) --j0;
    if (rows_ == 1) i0 = 0;
    if (cols_ == 1) j0 = 0;
    const int i1 = std::min(i0 + 1, rows_ - 1);
    const int j1 = std::min(j0 + 1, cols_ - 1);
    const double wi = fi - i0;
    const double wj = fj - j0;

    // Nodata propagates as an error, never as 0, but corners with zero
    // weight are not consulted (exact-node queries next to holes are fine).
    auto at = [&](int i, int j, double w) {
        if (w == 0.0) return 0.0;
        const float v = heights_[static_cast<std::size_t>(i) * cols_ + j];
        if (nodata_ && v == *nodata_) {
            std::ostringstream os;
            os << "DEM nodata at sample (" << i << ", " << j << ")";
            throw GeometryError(os.str());
        }
        return w * static_cast<double>(v);
    };

    return at(i0, j0, (1.0 - wi) * (1.0 - wj)) + at(i0, j1, (1.0 - wi) * wj) +
           at(i1, j0, wi * (1.0 - wj)) + at(i1, j1, wi * wj);
}

}  // namespace pfargeo
