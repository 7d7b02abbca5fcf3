#include "pfargeo/raster_io.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "pfargeo/errors.hpp"

namespace pfargeo {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const char* data, std::size_t bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    out.write(data, static_cast<std::streamsize>(bytes));
    if (!out) {
        throw IoError("short write to " + path);
    }
}

std::size_t dtype_bytes(const std::string& dtype) {
    if (dtype == "float32") return 4;
    if (dtype == "float64") return 8;
    if (dtype == "complex64") return 8;
    throw IoError("unknown raster dtype '" + dtype + "'");
}

}  // namespace

RasterHeader read_raster_header(const std::string& header_path) {
    json j;
    try {
        j = json::parse(read_file(header_path));
    } catch (const json::parse_error& e) {
        throw IoError("malformed raster header " + header_path + ": " + e.what());
    }
    RasterHeader h;
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("dtype")) {
        throw IoError("raster header " + header_path + " needs rows, cols, dtype");
    }
    h.rows = j["rows"].get<int>();
    h.cols = j["cols"].get<int>();
    h.dtype = j["dtype"].get<std::string>();
    dtype_bytes(h.dtype);
    if (h.rows <= 0 || h.cols <= 0) {
        throw IoError("raster header " + header_path + " has non-positive dimensions");
    }
    if (j.contains("georeference") && !j["georeference"].is_null()) {
        const json& g = j["georeference"];
        h.georeference = GeoReference{g.at("lat0").get<double>(), g.at("lon0").get<double>(),
                                      g.at("dlat").get<double>(), g.at("dlon").get<double>()};
    }
    if (j.contains("nodata") && !j["nodata"].is_null()) {
        h.nodata = j["nodata"].get<double>();
    }
    if (j.contains("data_file") && !j["data_file"].is_null()) {
        h.data_file = j["data_file"].get<std::string>();
    }
    return h;
}

void write_raster_header(const std::string& header_path, const RasterHeader& h) {
    json j;
    j["rows"] = h.rows;
    j["cols"] = h.cols;
    j["dtype"] = h.dtype;
    if (h.georeference) {
        j["georeference"] = {{"lat0", h.georeference->lat0},
                             {"lon0", h.georeference->lon0},
                             {"dlat", h.georeference->dlat},
                             {"dlon", h.georeference->dlon}};
    }
    if (h.nodata) j["nodata"] = *h.nodata;
    if (h.data_file) j["data_file"] = *h.data_file;
    const std::string text = j.dump(2) + "\n";
    write_file(header_path, text.data(), text.size());
}

std::string raster_data_path(const std::string& header_path, const RasterHeader& h) {
    if (h.data_file) {
        const auto slash = header_path.find_last_of('/');
        const std::string dir =
            slash == std::string::npos ? std::string() : header_path.substr(0, slash + 1);
        return dir + *h.data_file;
    }
    const std::string suffix = ".json";
    if (header_path.size() > suffix.size() &&
        header_path.compare(header_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
        return header_path.substr(0, header_path.size() - suffix.size()) + ".bin";
    }
    return header_path + ".bin";
}

namespace {

std::string read_payload(const std::string& header_path, const RasterHeader& h) {
    std::string data = read_file(raster_data_path(header_path, h));
    const std::size_t expected =
        static_cast<std::size_t>(h.rows) * static_cast<std::size_t>(h.cols) *
        dtype_bytes(h.dtype);
    if (data.size() != expected) {
        std::ostringstream os;
        os << raster_data_path(header_path, h) << ": expected " << expected << " bytes, found "
           << data.size();
        throw IoError(os.str());
    }
    return data;
}

}  // namespace

void write_raster_f64(const std::string& header_path, const std::vector<double>& data, int rows,
                      int cols, const std::optional<GeoReference>& geo) {
    if (data.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw IoError("raster data size does not match dimensions");
    }
    RasterHeader h;
    h.rows = rows;
    h.cols = cols;
    h.dtype = "float64";
    h.georeference = geo;
    write_raster_header(header_path, h);
    write_file(raster_data_path(header_path, h), reinterpret_cast<const char*>(data.data()),
               data.size() * sizeof(double));
}

std::vector<double> read_raster_f64(const std::string& header_path, RasterHeader* header_out) {
    const RasterHeader h = read_raster_header(header_path);
    if (h.dtype != "float64") {
        throw IoError(header_path + ": expected dtype float64, found " + h.dtype);
    }
    const std::string payload = read_payload(header_path, h);
    std::vector<double> out(payload.size() / sizeof(double));
    std::memcpy(out.data(), payload.data(), payload.size());
    if (header_out) *header_out = h;
    return out;
}

void write_raster_c64(const std::string& header_path, const ComplexRaster& raster) {
    RasterHeader h;
    h.rows = raster.rows;
    h.cols = raster.cols;
    h.dtype = "complex64";
    write_raster_header(header_path, h);
    write_file(raster_data_path(header_path, h),
               reinterpret_cast<const char*>(raster.samples.data()),
               raster.samples.size() * sizeof(std::complex<float>));
}

ComplexRaster read_raster_c64(const std::string& header_path) {
    const RasterHeader h = read_raster_header(header_path);
    if (h.dtype != "complex64") {
        throw IoError(header_path + ": expected dtype complex64, found " + h.dtype);
    }
    const std::string payload = read_payload(header_path, h);
    ComplexRaster raster(h.rows, h.cols);
    std::memcpy(raster.samples.data(), payload.data(), payload.size());
    return raster;
}

DemRaster read_dem(const std::string& header_path) {
    const RasterHeader h = read_raster_header(header_path);
    if (!h.georeference) {
        throw IoError(header_path + ": DEM header needs a georeference block");
    }
    const std::string payload = read_payload(header_path, h);
    std::vector<float> heights(static_cast<std::size_t>(h.rows) *
                               static_cast<std::size_t>(h.cols));
    if (h.dtype == "float32") {
        std::memcpy(heights.data(), payload.data(), payload.size());
    } else if (h.dtype == "float64") {
        const double* src = reinterpret_cast<const double*>(payload.data());
        for (std::size_t i = 0; i < heights.size(); ++i) {
            heights[i] = static_cast<float>(src[i]);
        }
    } else {
        throw IoError(header_path + ": DEM dtype must be float32 or float64");
    }
    std::optional<float> nodata;
    if (h.nodata) nodata = static_cast<float>(*h.nodata);
    return DemRaster(std::move(heights), h.rows, h.cols, h.georeference->lat0,
                     h.georeference->lon0, h.georeference->dlat, h.georeference->dlon, nodata);
}

void write_dem(const std::string& header_path, const DemRaster& dem) {
    RasterHeader h;
    h.rows = dem.rows();
    h.cols = dem.cols();
    h.dtype = "float32";
    h.georeference = GeoReference{dem.lat0(), dem.lon0(), dem.dlat(), dem.dlon()};
    if (dem.nodata()) h.nodata = static_cast<double>(*dem.nodata());
    write_raster_header(header_path, h);
    write_file(raster_data_path(header_path, h),
               reinterpret_cast<const char*>(dem.heights().data()),
               dem.heights().size() * sizeof(float));
}

}  // namespace pfargeo
