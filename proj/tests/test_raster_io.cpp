#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "pfargeo/errors.hpp"
#include "pfargeo/raster_io.hpp"

using namespace pfargeo;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("pfargeo_test_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE("raster_io") {

TEST_CASE("float64 raster round-trips") {
    TempDir tmp;
    std::vector<double> data(6 * 4);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = 0.5 * static_cast<double>(i) - 3.0;
    write_raster_f64(tmp.file("a.json"), data, 6, 4);
    RasterHeader h;
    const std::vector<double> back = read_raster_f64(tmp.file("a.json"), &h);
    CHECK(h.rows == 6);
    CHECK(h.cols == 4);
    CHECK((back == data));
}

TEST_CASE("complex raster round-trips") {
    TempDir tmp;
    ComplexRaster r(3, 5);
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<float> amp(-2.0f, 2.0f);
    for (auto& v : r.samples) v = {amp(rng), amp(rng)};
    write_raster_c64(tmp.file("slc.json"), r);
    const ComplexRaster back = read_raster_c64(tmp.file("slc.json"));
    CHECK(back.rows == 3);
    CHECK(back.cols == 5);
    CHECK((back.samples == r.samples));
}

TEST_CASE("DEM round-trips with georeference and nodata") {
    TempDir tmp;
    std::vector<float> heights(5 * 7, 42.0f);
    heights[3] = -9999.0f;
    DemRaster dem(std::move(heights), 5, 7, 33.5, -118.5, 0.01, 0.0125, -9999.0f);
    write_dem(tmp.file("dem.json"), dem);
    const DemRaster back = read_dem(tmp.file("dem.json"));
    CHECK(back.rows() == 5);
    CHECK(back.cols() == 7);
    CHECK(back.lat0() == 33.5);
    CHECK(back.dlon() == 0.0125);
    REQUIRE(back.nodata().has_value());
    CHECK(*back.nodata() == -9999.0f);
    CHECK((back.heights() == dem.heights()));
}

TEST_CASE("size mismatch is an I/O error") {
    TempDir tmp;
    std::vector<double> data(10, 1.0);
    write_raster_f64(tmp.file("bad.json"), data, 5, 2);
    RasterHeader h = read_raster_header(tmp.file("bad.json"));
    h.rows = 7;  // lie about the size
    write_raster_header(tmp.file("bad.json"), h);
    CHECK_THROWS_AS(read_raster_f64(tmp.file("bad.json"), nullptr), IoError);
}

TEST_CASE("missing files and wrong dtypes are I/O errors") {
    TempDir tmp;
    CHECK_THROWS_AS(read_raster_header(tmp.file("nope.json")), IoError);
    ComplexRaster r(2, 2);
    write_raster_c64(tmp.file("slc.json"), r);
    CHECK_THROWS_AS(read_raster_f64(tmp.file("slc.json"), nullptr), IoError);
    CHECK_THROWS_AS(read_dem(tmp.file("slc.json")), IoError);
}

}  // TEST_SUITE
