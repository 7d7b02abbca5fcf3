#include <doctest.h>

#include <cmath>

#include "pfargeo/errors.hpp"
#include "pfargeo/rd_solver.hpp"
#include "pfargeo/testkit.hpp"

using namespace pfargeo;
using namespace pfargeo::testkit;

TEST_SUITE("testkit") {

TEST_CASE("preset 1 reproduces the trivial equatorial state") {
    const auto scene = make_synthetic_scene(1, ScenePreset::EquatorialNadirOffset, 4);
    const StateVector st = scene.orbit.state_at(scene.truth.t_coa);
    CHECK(norm(st.position - EcefPoint{7.0e6, 0.0, 0.0}) < 1e-6);
    CHECK(norm(st.velocity - Vec3{0.0, 7.5e3, 0.0}) < 1e-9);
    CHECK((scene.truth.arp_pos == EcefPoint{7.0e6, 0.0, 0.0}));
}

TEST_CASE("every probe satisfies the solve residuals by construction") {
    for (int preset = 0; preset < 3; ++preset) {
        const auto scene = make_synthetic_scene(100 + preset, preset_from_index(preset), 50);
        const StateVector state{scene.truth.t_coa, scene.truth.arp_pos, scene.truth.arp_vel};
        const double vmag = norm(scene.truth.arp_vel);
        for (const auto& probe : scene.probes) {
            const SolveDiagnostics diag =
                solve_residuals(state, probe.rrdot, probe.ground, scene.surface_height);
            CHECK(std::abs(diag.range_residual) < 1e-9 * probe.rrdot.r);
            CHECK(std::abs(diag.rdot_residual) < 1e-9 * vmag);
            CHECK(std::abs(diag.height_residual) < 1e-9 * probe.rrdot.r);
        }
    }
}

TEST_CASE("brute force solves the trivial equatorial case") {
    const StateVector state{0.0, {7.0e6, 0.0, 0.0}, {0.0, 7.5e3, 0.0}};
    const EcefPoint p = brute_force_rrdot(state, {621863.0, 0.0}, 0.0, LookSide::Right);
    CHECK(norm(p - EcefPoint{6378137.0, 0.0, 0.0}) < 1e-3);
}

TEST_CASE("oracle and solver agree on positions and verdicts") {
    const StateVector state{0.0, {7.0e6, 0.0, 0.0}, {0.0, 7.5e3, 0.0}};
    // Solvable spread of ranges and range rates on both sides.
    for (double r : {6.3e5, 6.6e5, 7.4e5, 9.0e5}) {
        for (double rdot : {-60.0, 0.0, 45.0}) {
            for (LookSide side : {LookSide::Left, LookSide::Right}) {
                const SurfaceSolution sol = rrdot_to_surface(state, {r, rdot}, 30.0, side);
                const EcefPoint oracle = brute_force_rrdot(state, {r, rdot}, 30.0, side);
                CHECK(norm(sol.point - oracle) < 0.01);
            }
        }
    }
    // Tangent-ish and impossible ranges: identical verdicts.
    for (double r : {621863.0 - 1.0, 5.0e5}) {
        bool solver_no = false, oracle_no = false;
        try {
            rrdot_to_surface(state, {r, 0.0}, 0.0, LookSide::Right);
        } catch (const NoSolutionError&) {
            solver_no = true;
        }
        try {
            brute_force_rrdot(state, {r, 0.0}, 0.0, LookSide::Right);
        } catch (const NoSolutionError&) {
            oracle_no = true;
        }
        CHECK(solver_no == oracle_no);
    }
}

TEST_CASE("finite-difference range rate validates the analytic dot product") {
    const CircularOrbit circ{7.0e6, 7.5e3, {1, 0, 0}, {0, 1, 0}, 150.0};
    const Orbit orbit = circ.sample(0.0, 300.0, 10.0);

    // Zero at the zero-Doppler point of the target below the orbit plane.
    const EcefPoint broadside = llh_to_ecef({-1.2, 0.0, 0.0});
    CHECK(std::abs(finite_diff_rdot(orbit, broadside, 150.0)) < 2e-4);

    // Random epochs: matches V.(R_sat - T)/|R_sat - T|.
    for (double eta : {80.0, 120.0, 151.0, 203.5}) {
        const StateVector st = orbit.state_at(eta);
        const double want = dot(st.velocity, st.position - broadside) /
                            norm(st.position - broadside);
        CHECK(std::abs(finite_diff_rdot(orbit, broadside, eta) - want) < 1e-4);
    }
}

TEST_CASE("finite-difference range rate on a linear orbit closed form") {
    std::vector<StateVector> states;
    for (int i = -6; i <= 6; ++i) {
        const double t = 10.0 * i;
        states.push_back({t, {7.0e6, 7.5e3 * t, 0.0}, {0.0, 7.5e3, 0.0}});
    }
    const Orbit orbit(std::move(states));
    const EcefPoint target{6378137.0, 0.0, 0.0};
    // d/dt hypot(dx, v t) = v^2 t / hypot  with dx = 621863.
    const double eta = 20.0;
    const double want =
        7.5e3 * 7.5e3 * eta / std::hypot(621863.0, 7.5e3 * eta);
    CHECK(std::abs(finite_diff_rdot(orbit, target, eta) - want) < 1e-4);
}

TEST_CASE("probe pixels stay inside the image with margin") {
    for (int preset = 0; preset < 3; ++preset) {
        const auto scene = make_synthetic_scene(300 + preset, preset_from_index(preset), 100);
        CHECK(scene.probes.size() == 100);
        for (const auto& probe : scene.probes) {
            CHECK(probe.pixel.row >= 8.0);
            CHECK(probe.pixel.row <= scene.meta.rows - 9.0);
            CHECK(probe.pixel.col >= 8.0);
            CHECK(probe.pixel.col <= scene.meta.cols - 9.0);
        }
    }
}

}  // TEST_SUITE
