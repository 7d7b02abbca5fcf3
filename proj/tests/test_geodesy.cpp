#include <doctest.h>

#include <cmath>
#include <random>

#include "pfargeo/errors.hpp"
#include "pfargeo/geodesy.hpp"
#include "pfargeo/polynomial.hpp"

using namespace pfargeo;

TEST_SUITE("geodesy") {

TEST_CASE("llh_to_ecef at the equator on the prime meridian") {
    const EcefPoint p = llh_to_ecef({0.0, 0.0, 0.0});
    CHECK(p.x == doctest::Approx(6378137.0).epsilon(1e-12));
    CHECK(std::abs(p.y) < 1e-9);
    CHECK(std::abs(p.z) < 1e-9);
}

TEST_CASE("llh_to_ecef at the north pole equals the semi-minor axis") {
    const EcefPoint p = llh_to_ecef({90.0, 0.0, 0.0});
    CHECK(std::abs(p.z - 6356752.3142) < 1e-3);
    CHECK(std::abs(p.x) < 1e-3);
    CHECK(std::abs(p.y) < 1e-3);
}

TEST_CASE("llh_to_ecef matches an independent textbook evaluation") {
    // Frozen from a direct evaluation of N = a / sqrt(1 - e^2 sin^2(lat)),
    // x = (N+h) cos cos, y = (N+h) cos sin, z = (N(1-e^2)+h) sin.
    const EcefPoint p = llh_to_ecef({34.05, -118.25, 500.0});
    CHECK(p.x == doctest::Approx(-2504130.472208892).epsilon(1e-12));
    CHECK(p.y == doctest::Approx(-4660413.443934171).epsilon(1e-12));
    CHECK(p.z == doctest::Approx(3551323.1280550193).epsilon(1e-12));
}

TEST_CASE("ecef_to_llh at the equator") {
    const LlhPoint p = ecef_to_llh({6378137.0, 0.0, 0.0});
    CHECK(std::abs(p.latitude) < 1e-9);
    CHECK(std::abs(p.longitude) < 1e-9);
    CHECK(std::abs(p.height) < 1e-4);
}

TEST_CASE("ecef_to_llh at the pole reports longitude 0") {
    const LlhPoint p = ecef_to_llh({0.0, 0.0, 6356752.3142});
    CHECK(std::abs(p.latitude - 90.0) < 1e-7);
    CHECK(p.longitude == 0.0);
    CHECK(std::abs(p.height) < 1e-3);
}

TEST_CASE("ecef_to_llh rejects points near the Earth center") {
    CHECK_THROWS_AS(ecef_to_llh({0.4, 0.3, 0.2}), GeometryError);
}

TEST_CASE("llh round-trip identity over 1000 random points") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> lat(-89.9, 89.9);
    std::uniform_real_distribution<double> lon(-180.0, 180.0);
    std::uniform_real_distribution<double> hae(-500.0, 9000.0);
    for (int i = 0; i < 1000; ++i) {
        const LlhPoint in{lat(rng), lon(rng), hae(rng)};
        const EcefPoint ecef = llh_to_ecef(in);
        const LlhPoint out = ecef_to_llh(ecef);
        const EcefPoint back = llh_to_ecef(out);
        CHECK(norm(back - ecef) < 1e-4);
    }
}

TEST_CASE("height_above_ellipsoid mirrors ecef_to_llh") {
    CHECK(std::abs(height_above_ellipsoid({6378137.0, 0.0, 0.0})) < 1e-4);
    CHECK(std::abs(height_above_ellipsoid({0.0, 0.0, 6356752.3142})) < 1e-3);
    CHECK(height_above_ellipsoid(llh_to_ecef({34.05, -118.25, 500.0})) ==
          doctest::Approx(500.0).epsilon(1e-9));

    // Bit-identical to ecef_to_llh(p).height over random points.
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> lat(-89.9, 89.9);
    std::uniform_real_distribution<double> lon(-180.0, 180.0);
    std::uniform_real_distribution<double> hae(-500.0, 9000.0);
    for (int i = 0; i < 500; ++i) {
        const EcefPoint p = llh_to_ecef({lat(rng), lon(rng), hae(rng)});
        CHECK(height_above_ellipsoid(p) == ecef_to_llh(p).height);
    }
}

TEST_CASE("poly_eval basics") {
    CHECK(poly_eval(Polynomial1D{{2.0}}, 17.0) == 2.0);
    CHECK(poly_eval(Polynomial1D{{1.0, 2.0, 3.0}}, 2.0) == 17.0);
}

TEST_CASE("poly_eval matches naive power-sum evaluation") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    std::uniform_real_distribution<double> at(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        Polynomial1D p;
        for (int i = 0; i <= 5; ++i) p.coeffs.push_back(coef(rng));
        const double x = at(rng);
        double expect = 0.0;
        for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
            expect += p.coeffs[i] * std::pow(x, static_cast<double>(i));
        }
        CHECK(poly_eval(p, x) == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("poly_derivative basics") {
    CHECK(poly_derivative(Polynomial1D{{5.0}}) == Polynomial1D{{0.0}});
    CHECK(poly_derivative(Polynomial1D{{0.0, 0.0, 1.0}}) == Polynomial1D{{0.0, 2.0}});
}

TEST_CASE("poly_derivative matches central differences") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_real_distribution<double> at(-1.0, 1.0);
    Polynomial1D p;
    for (int i = 0; i <= 6; ++i) p.coeffs.push_back(coef(rng));
    const Polynomial1D d = poly_derivative(p);
    const double h = 1e-4;
    for (int i = 0; i < 100; ++i) {
        const double x = at(rng);
        const double fd = (poly_eval(p, x + h) - poly_eval(p, x - h)) / (2.0 * h);
        CHECK(std::abs(fd - poly_eval(d, x)) < 1e-6 * std::max(1.0, std::abs(poly_eval(d, x))));
    }
}

TEST_CASE("poly2d_eval evaluates the coefficient grid") {
    Poly2D p;
    p.coeffs = {{1.0, 2.0}, {3.0, 4.0}};
    // 1 + 2y + 3x + 4xy at (x=2, y=5)
    CHECK(poly2d_eval(p, 2.0, 5.0) == 1.0 + 10.0 + 6.0 + 40.0);
}

}  // TEST_SUITE
