#include "pfargeo/zd_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pfargeo/errors.hpp"

namespace pfargeo {

namespace {

constexpr double kNormalizedTol = 1e-12;
constexpr int kMaxNewtonIters = 60;

double doppler_g(const Orbit& orbit, const EcefPoint& target, double eta, StateVector* st_out) {
    const StateVector st = orbit.state_at(eta);
    if (st_out) *st_out = st;
    return dot(st.velocity, st.position - target);
}

}  // namespace

ZdSolution zd_inverse_map(const Orbit& orbit, const EcefPoint& target,
                          std::optional<double> eta_guess) {
    const double t_begin = orbit.start_time();
    const double t_end = orbit.end_time();
    const double guess = eta_guess ? *eta_guess : 0.5 * (t_begin + t_end);

    // Grow a bracket geometrically from the guess. Spotlight scenes are tiny
    // relative to the orbit span, so this terminates in a few doublings.
    double lo = std::clamp(guess, t_begin, t_end);
    double hi = lo;
    double glo = doppler_g(orbit, target, lo, nullptr);
    double ghi = glo;
    double step = 1.0;
    while (glo * ghi > 0.0) {
        bool moved = false;
        if (lo > t_begin) {
            lo = std::max(t_begin, lo - step);
            glo = doppler_g(orbit, target, lo, nullptr);
            moved = true;
        }
        if (glo * ghi <= 0.0) break;
        if (hi < t_end) {
            hi = std::min(t_end, hi + step);
            ghi = doppler_g(orbit, target, hi, nullptr);
            moved = true;
        }
        if (!moved) {
            std::ostringstream os;
            os << "zero-Doppler time of target is outside the orbit span [" << t_begin << ", "
               << t_end << "] s (g keeps sign " << (glo > 0.0 ? "+" : "-") << ")";
            throw GeometryError(os.str());
        }
        step *= 2.0;
    }

    // Newton on g(eta), derivative from the analytic Hermite acceleration,
    // falling back to bisection whenever the step leaves the bracket.
    double eta = 0.5 * (lo + hi);
    StateVector st;
    for (int iter = 0; iter < kMaxNewtonIters; ++iter) {
        const double g = doppler_g(orbit, target, eta, &st);
        const double vmag = norm(st.velocity);
        const double dist = norm(st.position - target);
        if (std::abs(g) < kNormalizedTol * vmag * dist) {
            return {eta, dist};
        }
        if (g > 0.0) {
            hi = eta;
        } else {
            lo = eta;
        }
        const Vec3 accel = orbit.acceleration_at(eta);
        const double dg = dot(accel, st.position - target) + vmag * vmag;
        double next = (dg != 0.0) ? eta - g / dg : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        eta = next;
    }

    const double g = doppler_g(orbit, target, eta, &st);
    const double vmag = norm(st.velocity);
    const double dist = norm(st.position - target);
    if (std::abs(g) < kNormalizedTol * vmag * dist) {
        return {eta, dist};
    }
    throw GeometryError("zd_inverse_map: Newton/bisection did not reach tolerance");
}

SurfaceSolution zd_forward_map(const ZeroDopplerGrid& grid, const ImageIndex& index,
                               const Surface& surface) {
    if (!(index.row >= 0.0 && index.row <= grid.rows - 1 && index.col >= 0.0 &&
          index.col <= grid.lines - 1)) {
        throw GeometryError("zd_forward_map: index outside the grid");
    }
    const StateVector state = grid.orbit.state_at(grid.time_of_line(index.col));
    const RangeDoppler rd{grid.range_of_row(index.row), 0.0};
    return rrdot_to_ground(state, rd, surface, grid.look_side);
}

}  // namespace pfargeo
