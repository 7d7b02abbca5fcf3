#include <doctest.h>

#include <cmath>
#include <random>

#include "pfargeo/errors.hpp"
#include "pfargeo/mapping.hpp"
#include "pfargeo/resampler.hpp"
#include "pfargeo/testkit.hpp"

using namespace pfargeo;

namespace {

struct SceneFixture {
    testkit::SyntheticScene scene;
    PfaMapper mapper;
    double ref_height;

    static SceneFixture make() {
        auto scene = testkit::make_synthetic_scene(
            900, testkit::ScenePreset::EquatorialNadirOffset, 1);
        PfaMapper mapper = make_pfa_mapper(scene.meta);
        const double ref = scene.meta.scp_llh.height;
        return {std::move(scene), mapper, ref};
    }
};

}  // namespace

TEST_SUITE("resampler") {

TEST_CASE("interpolate_complex basics") {
    ComplexRaster src(3, 3);
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            src.at(r, c) = {static_cast<float>(r * 3 + c), static_cast<float>(-c)};
        }
    }
    // Integer index: exact sample.
    CHECK(*interpolate_complex(src, {1.0, 2.0}) == src.at(1, 2));

    // Midpoint of four equal samples: that value.
    ComplexRaster flat(2, 2);
    for (auto& v : flat.samples) v = {3.5f, -1.25f};
    CHECK(*interpolate_complex(flat, {0.5, 0.5}) == std::complex<float>(3.5f, -1.25f));

    // Out of bounds: no value.
    CHECK(!interpolate_complex(src, {-0.01, 1.0}).has_value());
    CHECK(!interpolate_complex(src, {1.0, 2.01}).has_value());
}

TEST_CASE("interpolate_complex matches a direct weighted sum") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<float> amp(-2.0f, 2.0f);
    ComplexRaster src(8, 8);
    for (auto& v : src.samples) v = {amp(rng), amp(rng)};
    std::uniform_real_distribution<double> at(0.0, 7.0);
    for (int i = 0; i < 200; ++i) {
        const ImageIndex idx{at(rng), at(rng)};
        const auto got = interpolate_complex(src, idx);
        REQUIRE(got.has_value());
        const int r0 = std::min(static_cast<int>(idx.row), 6);
        const int c0 = std::min(static_cast<int>(idx.col), 6);
        const double wr = idx.row - r0, wc = idx.col - c0;
        auto lift = [&](int r, int c) {
            return std::complex<double>(src.at(r, c).real(), src.at(r, c).imag());
        };
        const std::complex<double> want =
            (1 - wr) * ((1 - wc) * lift(r0, c0) + wc * lift(r0, c0 + 1)) +
            wr * ((1 - wc) * lift(r0 + 1, c0) + wc * lift(r0 + 1, c0 + 1));
        CHECK(std::abs(std::complex<double>(got->real(), got->imag()) - want) < 1e-5);
    }
}

TEST_CASE("design_zd_grid on a degenerate 1x1 image") {
    auto fx = SceneFixture::make();
    fx.mapper.grid.rows = 1;
    fx.mapper.grid.cols = 1;
    fx.mapper.grid.scp_row = 0.0;
    fx.mapper.grid.scp_col = 0.0;
    const ZeroDopplerGrid zd = design_zd_grid(fx.mapper, fx.ref_height, fx.scene.orbit);
    CHECK(zd.rows == 1);
    CHECK(zd.lines == 1);
    const ZdSolution scp = zd_inverse_map(fx.scene.orbit, fx.mapper.grid.scp_ecef);
    CHECK(std::abs(zd.r0 - scp.r) < 1.0);
    CHECK(std::abs(zd.t0 - scp.eta) < 0.5);
}

TEST_CASE("design_zd_grid keeps every corner inside with a 2-pixel margin") {
    const auto fx = SceneFixture::make();
    const ZeroDopplerGrid zd = design_zd_grid(fx.mapper, fx.ref_height, fx.scene.orbit);
    const double last_row = fx.mapper.grid.rows - 1.0;
    const double last_col = fx.mapper.grid.cols - 1.0;
    for (const ImageIndex corner :
         {ImageIndex{0.0, 0.0}, {0.0, last_col}, {last_row, 0.0}, {last_row, last_col}}) {
        const EcefPoint ground =
            pfa_forward_map(fx.mapper, corner, ConstantHae{fx.ref_height}).point;
        const ZdSolution sol = zd_inverse_map(fx.scene.orbit, ground);
        const double row = (sol.r - zd.r0) / zd.dr;
        const double col = (sol.eta - zd.t0) / zd.dt;
        CHECK(row >= 2.0 - 1e-6);
        CHECK(row <= zd.rows - 3.0 + 1e-6);
        CHECK(col >= 2.0 - 1e-6);
        CHECK(col <= zd.lines - 3.0 + 1e-6);
    }
}

TEST_CASE("design_zd_grid spacings track the PFA metric spacings within 10%") {
    const auto fx = SceneFixture::make();
    const ZeroDopplerGrid zd = design_zd_grid(fx.mapper, fx.ref_height, fx.scene.orbit);

    const double pfa_range_spacing =
        std::abs(fx.mapper.affine.a11) * fx.mapper.grid.row_spacing;
    CHECK(zd.dr == doctest::Approx(pfa_range_spacing).epsilon(0.10));

    // Ground distance between neighboring azimuth lines at mid range.
    const double mid_r = zd.range_of_row(zd.rows / 2.0);
    const double mid_t = zd.time_of_line(zd.lines / 2.0);
    const EcefPoint a = rrdot_to_surface(fx.scene.orbit.state_at(mid_t), {mid_r, 0.0},
                                         fx.ref_height, zd.look_side)
                            .point;
    const EcefPoint b = rrdot_to_surface(fx.scene.orbit.state_at(mid_t + zd.dt), {mid_r, 0.0},
                                         fx.ref_height, zd.look_side)
                            .point;
    CHECK(norm(b - a) == doctest::Approx(fx.mapper.grid.col_spacing).epsilon(0.10));
}

TEST_CASE("resampling a constant image preserves it over the valid mask") {
    const auto fx = SceneFixture::make();
    const ZeroDopplerGrid zd = design_zd_grid(fx.mapper, fx.ref_height, fx.scene.orbit);
    ComplexRaster ones(fx.scene.meta.rows, fx.scene.meta.cols);
    for (auto& v : ones.samples) v = {1.0f, 0.0f};
    const auto [out, report] = resample_pfa_to_zd(ones, fx.mapper, zd, fx.ref_height);
    CHECK(report.valid_fraction > 0.0);
    CHECK(report.valid_fraction <= 1.0);
    long long nonzero = 0;
    for (const auto& v : out.samples) {
        if (v != std::complex<float>(0.0f, 0.0f)) {
            ++nonzero;
            CHECK(v == std::complex<float>(1.0f, 0.0f));
        }
    }
    CHECK(nonzero ==
          std::llround(report.valid_fraction * static_cast<double>(out.samples.size())));
    CHECK(report.max_ground_roundtrip_error < 0.01);
}

TEST_CASE("impulse lands where the chained mapping predicts") {
    const auto fx = SceneFixture::make();
    const ZeroDopplerGrid zd = design_zd_grid(fx.mapper, fx.ref_height, fx.scene.orbit);
    ComplexRaster impulse(fx.scene.meta.rows, fx.scene.meta.cols);
    const int prow = 130, pcol = 380;
    impulse.at(prow, pcol) = {2.0f, 0.0f};
    const auto [out, report] = resample_pfa_to_zd(impulse, fx.mapper, zd, fx.ref_height);
    (void)report;

    int peak_row = -1, peak_col = -1;
    float peak = 0.0f;
    for (int r = 0; r < out.rows; ++r) {
        for (int c = 0; c < out.cols; ++c) {
            if (std::abs(out.at(r, c)) > peak) {
                peak = std::abs(out.at(r, c));
                peak_row = r;
                peak_col = c;
            }
        }
    }
    REQUIRE(peak > 0.0f);

    const EcefPoint ground =
        pfa_forward_map(fx.mapper, {static_cast<double>(prow), static_cast<double>(pcol)},
                        ConstantHae{fx.ref_height})
            .point;
    const ZdSolution sol = zd_inverse_map(fx.scene.orbit, ground);
    CHECK(std::abs((sol.r - zd.r0) / zd.dr - peak_row) <= 1.0);
    CHECK(std::abs((sol.eta - zd.t0) / zd.dt - peak_col) <= 1.0);
}

TEST_CASE("resample rejects mismatched SLC dimensions") {
    const auto fx = SceneFixture::make();
    const ZeroDopplerGrid zd = design_zd_grid(fx.mapper, fx.ref_height, fx.scene.orbit);
    ComplexRaster wrong(4, 4);
    CHECK_THROWS_AS(resample_pfa_to_zd(wrong, fx.mapper, zd, fx.ref_height), GeometryError);
}

TEST_CASE("design_zd_grid reports unsolvable corners") {
    const auto fx = SceneFixture::make();
    // A surface 200 km below the ellipsoid is out of reach for every corner.
    CHECK_THROWS_WITH_AS(design_zd_grid(fx.mapper, -2.0e5, fx.scene.orbit),
                         doctest::Contains("corner"), GeometryError);
}

TEST_CASE("resample fails hard when most pixels cannot be solved") {
    const auto fx = SceneFixture::make();
    ZeroDopplerGrid zd = design_zd_grid(fx.mapper, fx.ref_height, fx.scene.orbit);
    zd.r0 = 1.0e3;  // ranges far shorter than the distance to the surface
    zd.dr = 0.001;
    zd.rows = 32;
    zd.lines = 32;
    ComplexRaster src(fx.scene.meta.rows, fx.scene.meta.cols);
    CHECK_THROWS_AS(resample_pfa_to_zd(src, fx.mapper, zd, fx.ref_height), GeometryError);
}

}  // TEST_SUITE
