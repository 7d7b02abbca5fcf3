#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfargeo/rd_solver.hpp"
#include "pfargeo/resampler.hpp"

namespace pfargeo {

/// Georeference block for lat/lon gridded products (DEMs).
struct GeoReference {
    double lat0 = 0.0;
    double lon0 = 0.0;
    double dlat = 0.0;
    double dlon = 0.0;
};

/// JSON header sidecar describing a raw little-endian flat binary raster.
/// The data file defaults to the header path with .json replaced by .bin.
struct RasterHeader {
    int rows = 0;
    int cols = 0;
    std::string dtype;  ///< "float32" | "float64" | "complex64"
    std::optional<GeoReference> georeference;
    std::optional<double> nodata;
    std::optional<std::string> data_file;
};

RasterHeader read_raster_header(const std::string& header_path);
void write_raster_header(const std::string& header_path, const RasterHeader& h);

/// Path of the flat binary next to a header.
std::string raster_data_path(const std::string& header_path, const RasterHeader& h);

/// float64 raster, row-major.
void write_raster_f64(const std::string& header_path, const std::vector<double>& data,
                      int rows, int cols, const std::optional<GeoReference>& geo = std::nullopt);
std::vector<double> read_raster_f64(const std::string& header_path, RasterHeader* header_out);

/// complex64 raster (interleaved float32 re/im), row-major.
void write_raster_c64(const std::string& header_path, const ComplexRaster& raster);
ComplexRaster read_raster_c64(const std::string& header_path);

/// DEM = float32/float64 raster with a mandatory georeference.
DemRaster read_dem(const std::string& header_path);
void write_dem(const std::string& header_path, const DemRaster& dem);

}  // namespace pfargeo
