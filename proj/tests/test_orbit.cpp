#include <doctest.h>

#include <cmath>

#include "pfargeo/errors.hpp"
#include "pfargeo/orbit.hpp"
#include "pfargeo/testkit.hpp"

using namespace pfargeo;

TEST_SUITE("orbit") {

TEST_CASE("construction validates ordering and count") {
    CHECK_THROWS_AS(Orbit({{0.0, {1, 0, 0}, {0, 1, 0}}}), GeometryError);
    CHECK_THROWS_AS(Orbit({{0.0, {1, 0, 0}, {0, 1, 0}}, {0.0, {2, 0, 0}, {0, 1, 0}}}),
                    GeometryError);
}

TEST_CASE("interpolation is exact at the nodes") {
    const testkit::CircularOrbit circ{7.0e6, 7.5e3, {1, 0, 0}, {0, 1, 0}, 0.0};
    const Orbit orbit = circ.sample(0.0, 100.0, 10.0);
    for (const StateVector& s : orbit.states()) {
        const StateVector q = orbit.state_at(s.time);
        CHECK((q.position == s.position));
        CHECK((q.velocity == s.velocity));
    }
}

TEST_CASE("linear motion is reproduced exactly at the midpoint") {
    std::vector<StateVector> states;
    for (int i = 0; i <= 4; ++i) {
        const double t = 10.0 * i;
        states.push_back({t, {1000.0 + 5.0 * t, -2.0 * t, 7.0}, {5.0, -2.0, 0.0}});
    }
    const Orbit orbit(std::move(states));
    const StateVector mid = orbit.state_at(15.0);
    CHECK(mid.position.x == doctest::Approx(1075.0).epsilon(1e-15));
    CHECK(mid.position.y == doctest::Approx(-30.0).epsilon(1e-15));
    CHECK(mid.position.z == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(mid.velocity.x == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(mid.velocity.y == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(std::abs(mid.velocity.z) < 1e-15);
}

TEST_CASE("circular orbit at 10 s spacing interpolates within 1e-3 m") {
    const testkit::CircularOrbit circ{7.0e6, 7.5e3, {1, 0, 0}, {0, 1, 0}, 0.0};
    const Orbit orbit = circ.sample(0.0, 200.0, 10.0);
    for (double t = 5.0; t < 200.0; t += 10.0) {
        const StateVector got = orbit.state_at(t);
        const StateVector want = circ.state_at(t);
        CHECK(norm(got.position - want.position) < 1e-3);
        CHECK(norm(got.velocity - want.velocity) < 1e-3);
    }
}

TEST_CASE("no extrapolation outside the span") {
    const testkit::CircularOrbit circ{7.0e6, 7.5e3, {1, 0, 0}, {0, 1, 0}, 0.0};
    const Orbit orbit = circ.sample(0.0, 100.0, 10.0);
    CHECK_THROWS_AS(orbit.state_at(-0.001), GeometryError);
    CHECK_THROWS_AS(orbit.state_at(100.001), GeometryError);
}

TEST_CASE("velocity is C1-continuous across interval boundaries") {
    const testkit::CircularOrbit circ{7.0e6, 7.5e3, {1, 0, 0}, {0, 1, 0}, 0.0};
    const Orbit orbit = circ.sample(0.0, 100.0, 10.0);
    for (double node = 10.0; node < 100.0; node += 10.0) {
        const StateVector before = orbit.state_at(std::nextafter(node, 0.0));
        const StateVector after = orbit.state_at(std::nextafter(node, 200.0));
        CHECK(norm(before.velocity - after.velocity) < 1e-9);
    }
}

TEST_CASE("acceleration matches the circular orbit's centripetal value") {
    const testkit::CircularOrbit circ{7.0e6, 7.5e3, {1, 0, 0}, {0, 1, 0}, 0.0};
    const Orbit orbit = circ.sample(0.0, 100.0, 10.0);
    const double omega = 7.5e3 / 7.0e6;
    const Vec3 accel = orbit.acceleration_at(35.0);
    const Vec3 want = -omega * omega * circ.state_at(35.0).position;
    CHECK(norm(accel - want) < 1e-4 * norm(want));
}

}  // TEST_SUITE
