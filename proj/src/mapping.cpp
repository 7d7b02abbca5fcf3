#include "pfargeo/mapping.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <optional>

#include "pfargeo/errors.hpp"
#include "pfargeo/parallel.hpp"

namespace pfargeo {

PfaMapper make_pfa_mapper(const SicdMeta& meta, std::vector<std::string>* warnings) {
    PfaMapper m;
    m.constants = derive_pfa_constants(meta, warnings);
    m.affine = compute_affine(m.constants);
    m.grid = grid_from_meta(meta);
    return m;
}

SurfaceSolution pfa_forward_map(const PfaMapper& m, const ImageIndex& index,
                                const Surface& surface) {
    const RangeDoppler rd = image_to_rrdot(m.affine, index_to_coord(m.grid, index));
    return rrdot_to_ground(m.coa_state(), rd, surface, m.constants.look_side);
}

RangeDoppler rrdot_of_target(const PfaConstants& k, const EcefPoint& target) {
    const Vec3 to_platform = k.arp_pos - target;
    const double r = norm(to_platform);
    if (!(r > 0.0)) {
        throw GeometryError("target coincides with the platform position");
    }
    return {r, dot(k.arp_vel, to_platform) / r};
}

ImageIndex pfa_inverse_map(const PfaMapper& m, const EcefPoint& target) {
    return coord_to_index(m.grid, rrdot_to_image(m.affine, rrdot_of_target(m.constants, target)));
}

GeocodeResult geocode_grid(const PfaMapper& m, const Surface& surface, int decimate,
                           int workers) {
    if (decimate < 1) {
        throw GeometryError("geocode: decimation factor must be >= 1");
    }
    GeocodeResult out;
    out.out_rows = (m.grid.rows + decimate - 1) / decimate;
    out.out_cols = (m.grid.cols + decimate - 1) / decimate;
    const std::size_t n =
        static_cast<std::size_t>(out.out_rows) * static_cast<std::size_t>(out.out_cols);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.latitude.assign(n, nan);
    out.longitude.assign(n, nan);
    out.height.assign(n, nan);

    std::atomic<long long> failures{0};

    // Outer loop over azimuth lines: every pixel on a line shares the same
    // degree-1 (R, Rdot) model and the same platform state.
    const ConstantHae* flat = std::get_if<ConstantHae>(&surface);
    const DemRaster* dem = flat ? nullptr : &std::get<DemRaster>(surface);
    parallel_for(out.out_cols, workers, [&](int oc) {
        const double col = static_cast<double>(oc) * decimate;
        const double az = (col - m.grid.scp_col) * m.grid.col_spacing;
        const ScanlineModel line = scanline_model(m.affine, m.constants, az);
        std::optional<double> hint;
        for (int orow = 0; orow < out.out_rows; ++orow) {
            const double row = static_cast<double>(orow) * decimate;
            const double rg = (row - m.grid.scp_row) * m.grid.row_spacing;
            const RangeDoppler rd = line.at(rg);
            const std::size_t slot =
                static_cast<std::size_t>(orow) * out.out_cols + static_cast<std::size_t>(oc);
            try {
                SurfaceSolution sol;
                if (flat) {
                    double psi = 0.0;
                    sol = rrdot_to_surface_ex(line.state, rd, flat->height,
                                              m.constants.look_side, hint, &psi);
                    hint = psi;
                } else {
                    sol = rrdot_to_dem(line.state, rd, *dem, m.constants.look_side);
                }
                const LlhPoint llh = ecef_to_llh(sol.point);
                out.latitude[slot] = llh.latitude;
                out.longitude[slot] = llh.longitude;
                out.height[slot] = llh.height;
            } catch (const GeometryError&) {
                failures.fetch_add(1, std::memory_order_relaxed);
                hint.reset();
            }
        }
    });

    out.failures = failures.load();
    return out;
}

}  // namespace pfargeo
