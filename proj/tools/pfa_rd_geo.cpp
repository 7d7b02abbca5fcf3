#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pfargeo/errors.hpp"
#include "pfargeo/mapping.hpp"
#include "pfargeo/parallel.hpp"
#include "pfargeo/raster_io.hpp"
#include "pfargeo/resampler.hpp"
#include "pfargeo/selftest.hpp"
#include "pfargeo/sicd_meta.hpp"
#include "pfargeo/zd_model.hpp"

#include <json.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMetadata = 2;
constexpr int kExitGeometry = 3;
constexpr int kExitIo = 4;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw pfargeo::IoError("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

pfargeo::SicdMeta load_meta(const std::string& path) {
    return pfargeo::parse_meta_auto(read_text_file(path));
}

pfargeo::Surface make_surface(const std::optional<double>& height,
                              const std::string& dem_path, double fallback_height) {
    if (!dem_path.empty()) {
        return pfargeo::read_dem(dem_path);
    }
    return pfargeo::ConstantHae{height ? *height : fallback_height};
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) {
        std::cerr << "warning: " << w << "\n";
    }
}

int cmd_info(const std::string& meta_path, bool strict) {
    using namespace pfargeo;
    const SicdMeta meta = load_meta(meta_path);

    std::cout << "file: " << meta_path << "\n";
    std::cout << "image: " << meta.rows << " x " << meta.cols << " pixels, spacing ("
              << meta.row_spacing << ", " << meta.col_spacing << ") m, SCP pixel ("
              << meta.scp_row << ", " << meta.scp_col << ")\n";
    std::cout << std::setprecision(12);
    std::cout << "SCP ECEF: (" << meta.scp_ecef.x << ", " << meta.scp_ecef.y << ", "
              << meta.scp_ecef.z << ") m\n";
    std::cout << "SCP LLH: (" << meta.scp_llh.latitude << " deg, " << meta.scp_llh.longitude
              << " deg, " << meta.scp_llh.height << " m)\n";
    std::cout << "side of track: " << look_side_char(meta.side_of_track) << "\n";
    std::cout << "center frequency: " << meta.center_frequency << " Hz (wavelength "
              << kSpeedOfLight / meta.center_frequency << " m)\n";
    if (meta.collect_start) {
        std::cout << "collect start: " << *meta.collect_start << "\n";
    }

    const double scp_mismatch = scp_consistency_distance(meta);
    if (scp_mismatch > 1.0) {
        std::cout << "warning: SCP LLH and ECEF disagree by " << scp_mismatch << " m\n";
    }

    bool constant = true;
    try {
        validate_constant_tcoa(meta);
    } catch (const GeometryError&) {
        constant = false;
    }
    if (!constant) {
        std::cout << "constant t_COA: NO (deviation over image "
                  << tcoa_max_deviation(meta) << " s)\n";
        if (strict) {
            std::cerr << "error: non-constant t_COA image rejected under --strict\n";
            return kExitGeometry;
        }
        return kExitOk;
    }
    std::cout << "constant t_COA: yes\n";

    std::vector<std::string> warnings;
    const PfaConstants k = derive_pfa_constants(meta, &warnings);
    const AffineModel m = compute_affine(k);
    std::cout << "t_COA: " << k.t_coa << " s\n";
    std::cout << "ARP position: (" << k.arp_pos.x << ", " << k.arp_pos.y << ", " << k.arp_pos.z
              << ") m\n";
    std::cout << "ARP velocity: (" << k.arp_vel.x << ", " << k.arp_vel.y << ", " << k.arp_vel.z
              << ") m/s\n";
    std::cout << "R_scp: " << k.r_scp << " m, Rdot_scp: " << k.rdot_scp << " m/s\n";
    std::cout << "Doppler at SCP: " << rdot_to_doppler(k.rdot_scp, k.wavelength) << " Hz\n";
    std::cout << "theta: " << k.theta_coa << " rad, dtheta/dt: " << k.dtheta_dt << " rad/s\n";
    std::cout << "KSF: " << k.ksf << ", dKSF/dtheta: " << k.dksf_dtheta << " 1/rad\n";
    std::cout << "affine: [[" << m.a11 << ", " << m.a12 << "], [" << m.a21 << ", " << m.a22
              << "]], det " << m.det() << "\n";
    for (const auto& w : warnings) {
        std::cout << "warning: " << w << "\n";
    }
    return kExitOk;
}

int cmd_forward(const std::string& meta_path, double row, double col,
                const std::optional<double>& height, const std::string& dem_path,
                bool verbose) {
    using namespace pfargeo;
    const SicdMeta meta = load_meta(meta_path);
    std::vector<std::string> warnings;
    const PfaMapper mapper = make_pfa_mapper(meta, &warnings);
    print_warnings(warnings);
    const Surface surface = make_surface(height, dem_path, meta.scp_llh.height);

    const SurfaceSolution sol = pfa_forward_map(mapper, ImageIndex{row, col}, surface);
    const LlhPoint llh = ecef_to_llh(sol.point);
    std::cout << std::fixed << std::setprecision(9) << llh.latitude << " " << llh.longitude
              << " " << std::setprecision(4) << llh.height << "\n";
    if (verbose) {
        std::cout << "# range residual:  " << std::setprecision(9)
                  << sol.diagnostics.range_residual << " m\n";
        std::cout << "# rdot residual:   " << sol.diagnostics.rdot_residual << " m/s\n";
        std::cout << "# height residual: " << sol.diagnostics.height_residual << " m\n";
        std::cout << "# iterations:      " << sol.diagnostics.iterations << "\n";
    }
    return kExitOk;
}

int cmd_inverse(const std::string& meta_path, double lat, double lon, double hae) {
    using namespace pfargeo;
    const SicdMeta meta = load_meta(meta_path);
    std::vector<std::string> warnings;
    const PfaMapper mapper = make_pfa_mapper(meta, &warnings);
    print_warnings(warnings);

    const EcefPoint target = llh_to_ecef(LlhPoint{lat, lon, hae});
    const ImageIndex index = pfa_inverse_map(mapper, target);
    std::cout << std::fixed << std::setprecision(4) << index.row << " " << index.col << "\n";
    return kExitOk;
}

int cmd_geocode(const std::string& meta_path, const std::optional<double>& height,
                const std::string& dem_path, const std::string& out_prefix, int decimate) {
    using namespace pfargeo;
    const SicdMeta meta = load_meta(meta_path);
    std::vector<std::string> warnings;
    const PfaMapper mapper = make_pfa_mapper(meta, &warnings);
    print_warnings(warnings);
    const Surface surface = make_surface(height, dem_path, meta.scp_llh.height);

    const GeocodeResult result =
        geocode_grid(mapper, surface, decimate, default_worker_count());

    write_raster_f64(out_prefix + ".lat.json", result.latitude, result.out_rows,
                     result.out_cols);
    write_raster_f64(out_prefix + ".lon.json", result.longitude, result.out_rows,
                     result.out_cols);
    write_raster_f64(out_prefix + ".hgt.json", result.height, result.out_rows, result.out_cols);

    const long long total =
        static_cast<long long>(result.out_rows) * static_cast<long long>(result.out_cols);
    std::cout << "geocoded " << result.out_rows << " x " << result.out_cols << " pixels ("
              << result.failures << " failures)\n";
    if (result.failures * 10 > total) {
        std::cerr << "error: more than 10% of pixels failed to geocode\n";
        return kExitGeometry;
    }
    return kExitOk;
}

int cmd_resample(const std::string& meta_path, const std::string& slc_path,
                 const std::optional<double>& height, const std::string& out_prefix,
                 double orbit_window) {
    using namespace pfargeo;
    const SicdMeta meta = load_meta(meta_path);
    std::vector<std::string> warnings;
    const PfaMapper mapper = make_pfa_mapper(meta, &warnings);
    print_warnings(warnings);

    const ComplexRaster src = read_raster_c64(slc_path);
    const double ref_height = height ? *height : meta.scp_llh.height;
    const Orbit orbit =
        orbit_from_arp_poly(meta, mapper.constants.t_coa, orbit_window, 1.0);
    const ZeroDopplerGrid zd = design_zd_grid(mapper, ref_height, orbit);

    const auto [raster, report] = resample_pfa_to_zd(src, mapper, zd, ref_height,
                                                     default_worker_count());
    write_raster_c64(out_prefix + ".slc.json", raster);

    nlohmann::json grid_json;
    grid_json["r0_m"] = zd.r0;
    grid_json["dr_m"] = zd.dr;
    grid_json["t0_s"] = zd.t0;
    grid_json["dt_s"] = zd.dt;
    grid_json["rows"] = zd.rows;
    grid_json["lines"] = zd.lines;
    grid_json["wavelength_m"] = zd.wavelength;
    grid_json["look_side"] = std::string(1, look_side_char(zd.look_side));
    grid_json["ref_height_m"] = ref_height;
    std::ofstream grid_out(out_prefix + ".grid.json");
    grid_out << grid_json.dump(2) << "\n";

    nlohmann::json report_json;
    report_json["valid_fraction"] = report.valid_fraction;
    report_json["max_ground_roundtrip_error_m"] = report.max_ground_roundtrip_error;
    std::ofstream report_out(out_prefix + ".report.json");
    report_out << report_json.dump(2) << "\n";

    std::cout << "resampled to " << zd.rows << " x " << zd.lines << " (valid fraction "
              << report.valid_fraction << ")\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constant-t_COA Spotlight PFA geometry: Range-Doppler mappings,"
                 " geocoding, and PFA-to-Zero-Doppler resampling"};
    app.require_subcommand(1);

    std::string meta_path;
    bool strict = false;
    auto* info = app.add_subcommand("info", "inspect metadata and the derived constants");
    info->add_option("meta", meta_path, "SICD XML or JSON sidecar")->required();
    info->add_flag("--strict", strict, "exit nonzero for non-constant t_COA images");

    std::vector<double> pixel{0.0, 0.0};
    std::optional<double> height;
    std::string dem_path;
    bool verbose = false;
    auto* forward = app.add_subcommand("forward", "map one pixel to the ground");
    forward->add_option("meta", meta_path, "SICD XML or JSON sidecar")->required();
    forward->add_option("--pixel", pixel, "row col (fractional pixels)")
        ->expected(2)
        ->required();
    auto* fwd_height =
        forward->add_option("--height", height, "constant surface height above ellipsoid, m");
    forward->add_option("--dem", dem_path, "DEM raster header (JSON)")->excludes(fwd_height);
    forward->add_flag("--verbose", verbose, "print residual diagnostics");

    std::vector<double> llh{0.0, 0.0, 0.0};
    auto* inverse = app.add_subcommand("inverse", "map a ground point to a pixel");
    inverse->add_option("meta", meta_path, "SICD XML or JSON sidecar")->required();
    inverse->add_option("--llh", llh, "lat lon height (deg deg m)")->expected(3)->required();

    std::string out_prefix;
    int decimate = 1;
    auto* geocode = app.add_subcommand("geocode", "forward-map the whole grid");
    geocode->add_option("meta", meta_path, "SICD XML or JSON sidecar")->required();
    auto* geo_height =
        geocode->add_option("--height", height, "constant surface height above ellipsoid, m");
    geocode->add_option("--dem", dem_path, "DEM raster header (JSON)")->excludes(geo_height);
    geocode->add_option("--out", out_prefix, "output prefix")->required();
    geocode->add_option("--decimate", decimate, "pixel stride in both directions")
        ->check(CLI::PositiveNumber);

    std::string slc_path;
    double orbit_window = 30.0;
    auto* resample = app.add_subcommand("resample", "resample the SLC to a Zero-Doppler grid");
    resample->add_option("meta", meta_path, "SICD XML or JSON sidecar")->required();
    resample->add_option("--slc", slc_path, "complex64 raster header (JSON)")->required();
    resample->add_option("--height", height, "reference height, m (default: SCP height)");
    resample->add_option("--out", out_prefix, "output prefix")->required();
    resample->add_option("--orbit-window", orbit_window,
                         "half-width of the ARP-polynomial orbit sampling window, s");

    auto* selftest = app.add_subcommand("selftest", "run the built-in acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (info->parsed()) return cmd_info(meta_path, strict);
        if (forward->parsed())
            return cmd_forward(meta_path, pixel[0], pixel[1], height, dem_path, verbose);
        if (inverse->parsed()) return cmd_inverse(meta_path, llh[0], llh[1], llh[2]);
        if (geocode->parsed())
            return cmd_geocode(meta_path, height, dem_path, out_prefix, decimate);
        if (resample->parsed())
            return cmd_resample(meta_path, slc_path, height, out_prefix, orbit_window);
        if (selftest->parsed()) return pfargeo::run_selftest(std::cout);
    } catch (const pfargeo::MetadataError& e) {
        std::cerr << "metadata error: " << e.what() << "\n";
        return kExitMetadata;
    } catch (const pfargeo::GeometryError& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return kExitGeometry;
    } catch (const pfargeo::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGeometry;
    }
    return kExitUsage;
}
