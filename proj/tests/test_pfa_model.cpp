#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>

#include "pfargeo/errors.hpp"
#include "pfargeo/pfa_model.hpp"
#include "pfargeo/testkit.hpp"

using namespace pfargeo;

namespace {

SicdMeta minimal_meta() {
    SicdMeta m;
    m.scp_ecef = {6378137.0, 0.0, 0.0};
    m.scp_llh = {0.0, 0.0, 0.0};
    m.scp_row = 128.0;
    m.scp_col = 128.0;
    m.rows = 256;
    m.cols = 256;
    m.row_spacing = 0.5;
    m.col_spacing = 0.5;
    m.time_coa_poly.coeffs = {{3.2}};
    m.polar_ang_poly = Polynomial1D{{0.1}};
    m.spatial_freq_sf_poly = Polynomial1D{{1.0}};
    m.arp_poly_x = Polynomial1D{{7.0e6}};
    m.arp_poly_y = Polynomial1D{{0.0, 7.5e3}};
    m.arp_poly_z = Polynomial1D{{0.0}};
    m.center_frequency = 9.65e9;
    m.side_of_track = LookSide::Right;
    return m;
}

std::int64_t ulp_distance(double a, double b) {
    if (a == b) return 0;
    auto ordered = [](double v) {
        const auto bits = std::bit_cast<std::int64_t>(v);
        return bits < 0 ? std::numeric_limits<std::int64_t>::min() - bits : bits;
    };
    const std::int64_t da = ordered(a), db = ordered(b);
    return da > db ? da - db : db - da;
}

}  // namespace

TEST_SUITE("pfa_model") {

TEST_CASE("validate_constant_tcoa accepts a constant polynomial") {
    SicdMeta m = minimal_meta();
    CHECK(validate_constant_tcoa(m) == 3.2);
}

TEST_CASE("validate_constant_tcoa rejects a linear term on a 5000 m image") {
    SicdMeta m = minimal_meta();
    m.rows = 10000;
    m.row_spacing = 0.5;  // 5000 m range extent
    m.time_coa_poly.coeffs = {{3.2}, {1e-4}};
    CHECK_THROWS_AS(validate_constant_tcoa(m), GeometryError);
}

TEST_CASE("validate_constant_tcoa tolerates negligible terms") {
    SicdMeta m = minimal_meta();
    m.time_coa_poly.coeffs = {{3.2}, {1e-15}};
    CHECK(validate_constant_tcoa(m) == 3.2);
}

TEST_CASE("derive_pfa_constants with constant polynomials") {
    SicdMeta m = minimal_meta();
    const PfaConstants k = derive_pfa_constants(m);
    CHECK(k.theta_coa == 0.1);
    CHECK(k.dtheta_dt == 0.0);
    CHECK(k.ksf == 1.0);
    CHECK(k.dksf_dtheta == 0.0);
    CHECK(k.t_coa == 3.2);
    CHECK(k.wavelength == doctest::Approx(299792458.0 / 9.65e9).epsilon(1e-15));
}

TEST_CASE("derive_pfa_constants geometry: orthogonal velocity gives zero rdot") {
    SicdMeta m = minimal_meta();
    // ARP (7e6, 0, 0) with velocity (0, 7.5e3, 0) at t_coa = 3.2:
    // arp_poly_y = 7.5e3 * t needs the COA value subtracted to place the
    // platform on the x axis at t_coa.
    m.arp_poly_y = Polynomial1D{{-7.5e3 * 3.2, 7.5e3}};
    const PfaConstants k = derive_pfa_constants(m);
    CHECK(k.r_scp == doctest::Approx(621863.0).epsilon(1e-12));
    CHECK(std::abs(k.rdot_scp) < 1e-9);
}

TEST_CASE("derive_pfa_constants matches the scene generator term-by-term") {
    const auto scene = testkit::make_synthetic_scene(
        77, testkit::ScenePreset::MidLatitudeSquint, 4);
    const PfaConstants k = derive_pfa_constants(scene.meta);
    const PfaConstants& want = scene.truth;
    CHECK(k.theta_coa == doctest::Approx(want.theta_coa).epsilon(1e-12));
    CHECK(k.dtheta_dt == doctest::Approx(want.dtheta_dt).epsilon(1e-12));
    CHECK(k.ksf == doctest::Approx(want.ksf).epsilon(1e-12));
    CHECK(k.dksf_dtheta == doctest::Approx(want.dksf_dtheta).epsilon(1e-12));
    CHECK(k.r_scp == doctest::Approx(want.r_scp).epsilon(1e-12));
    CHECK(k.rdot_scp == doctest::Approx(want.rdot_scp).epsilon(1e-9));
    CHECK((k.arp_pos == want.arp_pos));
    CHECK((k.arp_vel == want.arp_vel));
}

TEST_CASE("derive_pfa_constants names missing fields") {
    SicdMeta m = minimal_meta();
    m.spatial_freq_sf_poly.coeffs.clear();
    CHECK_THROWS_WITH_AS(derive_pfa_constants(m),
                         doctest::Contains("PFA/SpatialFreqSFPoly"), MetadataError);
}

TEST_CASE("derive_pfa_constants warns when COA state disagrees with the polynomial") {
    SicdMeta m = minimal_meta();
    m.coa_state = CoaState{{7.0e6 + 5.0, 0.0, 0.0}, {0.0, 7.5e3, 0.0}};
    std::vector<std::string> warnings;
    const PfaConstants k = derive_pfa_constants(m, &warnings);
    CHECK(k.arp_pos.x == 7.0e6 + 5.0);  // explicit COA fields win
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("disagrees") != std::string::npos);
}

TEST_CASE("compute_affine with theta = 0") {
    PfaConstants k;
    k.theta_coa = 0.0;
    k.ksf = 1.0;
    k.dksf_dtheta = 0.0;
    k.dtheta_dt = 0.06;
    k.r_scp = 6e5;
    const AffineModel m = compute_affine(k);
    CHECK(m.a11 == 1.0);
    CHECK(m.a12 == 0.0);
    CHECK(m.a21 == 0.0);
    CHECK(m.a22 == 0.06);
}

TEST_CASE("compute_affine with theta = pi/2") {
    PfaConstants k;
    k.theta_coa = M_PI / 2.0;
    k.ksf = 2.0;
    k.dksf_dtheta = 0.0;
    k.dtheta_dt = 0.05;
    k.r_scp = 6e5;
    const AffineModel m = compute_affine(k);
    CHECK(std::abs(m.a11) < 1e-15);
    CHECK(m.a12 == 2.0);
    CHECK(m.a21 == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(std::abs(m.a22) < 1e-15);
}

TEST_CASE("compute_affine entries match direct re-evaluation") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> theta(-0.25, 0.25);
    std::uniform_real_distribution<double> ksf(0.95, 1.05);
    std::uniform_real_distribution<double> dksf(-0.1, 0.1);
    std::uniform_real_distribution<double> dtheta(0.005, 0.05);
    for (int i = 0; i < 200; ++i) {
        PfaConstants k;
        k.theta_coa = theta(rng);
        k.ksf = ksf(rng);
        k.dksf_dtheta = dksf(rng);
        k.dtheta_dt = dtheta(rng);
        k.r_scp = 6e5;
        const AffineModel m = compute_affine(k);
        const double ct = std::cos(k.theta_coa), st = std::sin(k.theta_coa);
        CHECK(m.a11 == k.ksf * ct);
        CHECK(m.a12 == k.ksf * st);
        CHECK(m.a21 == (k.dksf_dtheta * ct - k.ksf * st) * k.dtheta_dt);
        CHECK(m.a22 == (k.dksf_dtheta * st + k.ksf * ct) * k.dtheta_dt);
    }
}

TEST_CASE("compute_affine rejects a degenerate matrix") {
    PfaConstants k;
    k.theta_coa = 0.1;
    k.ksf = 1.0;
    k.dksf_dtheta = 0.0;
    k.dtheta_dt = 0.0;  // det = ksf^2 * dtheta_dt = 0
    k.r_scp = 6e5;
    CHECK_THROWS_AS(compute_affine(k), GeometryError);
}

TEST_CASE("image_to_rrdot at the SCP and for an identity-like model") {
    AffineModel m{1.0, 0.0, 0.0, 0.05, 6.5e5, -20.0};
    const RangeDoppler at_scp = image_to_rrdot(m, {0.0, 0.0});
    CHECK(at_scp.r == 6.5e5);
    CHECK(at_scp.rdot == -20.0);

    const RangeDoppler rd = image_to_rrdot(m, {120.0, -40.0});
    CHECK(rd.r == 6.5e5 + 120.0);
    CHECK(rd.rdot == doctest::Approx(-20.0 - 40.0 * 0.05).epsilon(1e-15));
}

TEST_CASE("image_to_rrdot rejects non-positive range") {
    AffineModel m{1.0, 0.0, 0.0, 0.05, 10.0, 0.0};
    CHECK_THROWS_AS(image_to_rrdot(m, {-20.0, 0.0}), GeometryError);
}

TEST_CASE("image_to_rrdot matches a hand-rolled matrix product") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    std::uniform_real_distribution<double> coord(-300.0, 300.0);
    for (int i = 0; i < 200; ++i) {
        AffineModel m{1.0 + 0.1 * entry(rng), 0.2 * entry(rng), 0.05 * entry(rng),
                      0.05 * (1.0 + 0.5 * entry(rng)), 7.0e5, 15.0 * entry(rng)};
        const ImageCoord c{coord(rng), coord(rng)};
        const RangeDoppler rd = image_to_rrdot(m, c);
        CHECK(rd.r == m.r_scp + m.a11 * c.rg + m.a12 * c.az);
        CHECK(rd.rdot == m.rdot_scp + m.a21 * c.rg + m.a22 * c.az);
    }
}

TEST_CASE("rrdot_to_image inverts image_to_rrdot") {
    AffineModel m{0.998, 0.021, -0.0011, 0.0513, 6.5e5, -20.0};
    const ImageCoord at_scp = rrdot_to_image(m, {6.5e5, -20.0});
    CHECK(std::abs(at_scp.rg) < 1e-12);
    CHECK(std::abs(at_scp.az) < 1e-12);

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> coord(-400.0, 400.0);
    for (int i = 0; i < 1000; ++i) {
        const ImageCoord c{coord(rng), coord(rng)};
        const ImageCoord back = rrdot_to_image(m, image_to_rrdot(m, c));
        CHECK(std::abs(back.rg - c.rg) < 1e-6);
        CHECK(std::abs(back.az - c.az) < 1e-6);
    }
}

TEST_CASE("rrdot_to_image rejects a singular matrix") {
    AffineModel m{1.0, 0.0, 0.0, 0.0, 6.5e5, 0.0};
    CHECK_THROWS_AS(rrdot_to_image(m, {6.6e5, 1.0}), GeometryError);
}

TEST_CASE("affine linearity in the offsets") {
    AffineModel m{0.998, 0.021, -0.0011, 0.0513, 6.5e5, -20.0};
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> coord(-200.0, 200.0);
    const RangeDoppler zero = image_to_rrdot(m, {0.0, 0.0});
    for (int i = 0; i < 100; ++i) {
        const ImageCoord c1{coord(rng), coord(rng)};
        const ImageCoord c2{coord(rng), coord(rng)};
        const RangeDoppler a = image_to_rrdot(m, c1);
        const RangeDoppler b = image_to_rrdot(m, c2);
        const RangeDoppler sum = image_to_rrdot(m, {c1.rg + c2.rg, c1.az + c2.az});
        // Exact up to the reassociation of sums anchored at r_scp / rdot_scp.
        CHECK(std::abs((sum.r - zero.r) - ((a.r - zero.r) + (b.r - zero.r))) <
              8.0 * std::numeric_limits<double>::epsilon() * m.r_scp);
        CHECK(std::abs((sum.rdot - zero.rdot) - ((a.rdot - zero.rdot) + (b.rdot - zero.rdot))) <
              8.0 * std::numeric_limits<double>::epsilon() * std::abs(m.rdot_scp));
    }
}

TEST_CASE("scanline_model at az = 0 and equivalence with the affine map") {
    PfaConstants k;
    k.theta_coa = 0.04;
    k.ksf = 1.002;
    k.dksf_dtheta = 0.03;
    k.dtheta_dt = 0.02;
    k.r_scp = 6.5e5;
    k.rdot_scp = -12.0;
    k.arp_pos = {7.0e6, 0.0, 0.0};
    k.arp_vel = {0.0, 7.5e3, 0.0};
    k.t_coa = 150.0;
    const AffineModel m = compute_affine(k);

    const ScanlineModel at_zero = scanline_model(m, k, 0.0);
    CHECK(at_zero.r0 == k.r_scp);
    CHECK(at_zero.dr == m.a11);
    CHECK(at_zero.rdot0 == k.rdot_scp);
    CHECK(at_zero.drdot == m.a21);

    std::mt19937_64 rng(25);
    std::uniform_real_distribution<double> coord(-300.0, 300.0);
    for (int i = 0; i < 1000; ++i) {
        const double rg = coord(rng), az = coord(rng);
        const ScanlineModel line = scanline_model(m, k, az);
        const RangeDoppler via_line = line.at(rg);
        const RangeDoppler via_affine = image_to_rrdot(m, {rg, az});
        CHECK(ulp_distance(via_line.r, via_affine.r) <= 4);
        CHECK(ulp_distance(via_line.rdot, via_affine.rdot) <= 4);
        // Constant-state property: same platform state for every az.
        CHECK((line.state.position == k.arp_pos));
        CHECK((line.state.velocity == k.arp_vel));
        CHECK(line.state.time == k.t_coa);
    }
}

TEST_CASE("scanline R and Rdot are exactly degree-1 in rg") {
    PfaConstants k;
    k.theta_coa = -0.08;
    k.ksf = 0.99;
    k.dksf_dtheta = -0.04;
    k.dtheta_dt = 0.03;
    k.r_scp = 8.0e5;
    k.rdot_scp = 40.0;
    k.arp_pos = {7.0e6, 0.0, 0.0};
    k.arp_vel = {0.0, 7.5e3, 0.0};
    const AffineModel m = compute_affine(k);
    const ScanlineModel line = scanline_model(m, k, 57.0);
    for (int i = 1; i < 99; ++i) {
        const double rg = -120.0 + 2.5 * i;
        const RangeDoppler a = line.at(rg - 2.5);
        const RangeDoppler b = line.at(rg);
        const RangeDoppler c = line.at(rg + 2.5);
        CHECK(ulp_distance(b.r, b.r + ((c.r - b.r) - (b.r - a.r))) <= 4);
        CHECK(ulp_distance(b.rdot, b.rdot + ((c.rdot - b.rdot) - (b.rdot - a.rdot))) <= 4);
    }
}

TEST_CASE("scanline_model rejects a zero range step") {
    AffineModel m{0.0, 2.0, -0.1, 0.0, 6.5e5, 0.0};
    PfaConstants k;
    k.arp_pos = {7.0e6, 0.0, 0.0};
    k.arp_vel = {0.0, 7.5e3, 0.0};
    CHECK_THROWS_AS(scanline_model(m, k, 10.0), GeometryError);
}

TEST_CASE("grid_from_meta rejects an SCP pixel outside the raster") {
    SicdMeta m = minimal_meta();
    m.scp_row = 256.0;  // == rows, outside [0, rows)
    CHECK_THROWS_AS(grid_from_meta(m), MetadataError);
}

TEST_CASE("rdot_to_doppler arithmetic") {
    CHECK(rdot_to_doppler(0.0, 0.24) == 0.0);
    CHECK(rdot_to_doppler(-155.0, 0.031) == 10000.0);
    CHECK(rdot_to_doppler(120.0, 0.24) == -1000.0);
}

TEST_CASE("index/coord binding") {
    GridInfo g;
    g.scp_row = 100.0;
    g.scp_col = 200.0;
    g.row_spacing = 0.5;
    g.col_spacing = 0.7;
    g.rows = 256;
    g.cols = 512;

    const ImageCoord at_scp = index_to_coord(g, {100.0, 200.0});
    CHECK(at_scp.rg == 0.0);
    CHECK(at_scp.az == 0.0);

    CHECK(index_to_coord(g, {101.0, 200.0}).rg == 0.5);

    std::mt19937_64 rng(26);
    std::uniform_real_distribution<double> idx(-50.0, 500.0);
    for (int i = 0; i < 1000; ++i) {
        const ImageIndex in{idx(rng), idx(rng)};
        const ImageIndex back = coord_to_index(g, index_to_coord(g, in));
        CHECK(back.row == doctest::Approx(in.row).epsilon(1e-12));
        CHECK(back.col == doctest::Approx(in.col).epsilon(1e-12));
    }
}

}  // TEST_SUITE
