#include "pfargeo/resampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>

#include "pfargeo/errors.hpp"
#include "pfargeo/parallel.hpp"

namespace pfargeo {

namespace {
constexpr int kMarginPixels = 2;
constexpr int kRoundtripSamplesCap = 256;
}  // namespace

ZeroDopplerGrid design_zd_grid(const PfaMapper& pfa, double ref_height, const Orbit& orbit) {
    const GridInfo& g = pfa.grid;
    const Surface surface = ConstantHae{ref_height};

    const double last_row = static_cast<double>(g.rows - 1);
    const double last_col = static_cast<double>(g.cols - 1);
    const ImageIndex corners[4] = {{0.0, 0.0}, {0.0, last_col}, {last_row, 0.0},
                                   {last_row, last_col}};

    double r_min = 0.0, r_max = 0.0, eta_min = 0.0, eta_max = 0.0;
    std::ostringstream failed;
    bool any_failed = false;
    for (int i = 0; i < 4; ++i) {
        try {
            const SurfaceSolution sol = pfa_forward_map(pfa, corners[i], surface);
            const ZdSolution zd = zd_inverse_map(orbit, sol.point);
            if (i == 0) {
                r_min = r_max = zd.r;
                eta_min = eta_max = zd.eta;
            } else {
                r_min = std::min(r_min, zd.r);
                r_max = std::max(r_max, zd.r);
                eta_min = std::min(eta_min, zd.eta);
                eta_max = std::max(eta_max, zd.eta);
            }
        } catch (const GeometryError& e) {
            any_failed = true;
            failed << " corner(" << corners[i].row << "," << corners[i].col << "): " << e.what()
                   << ";";
        }
    }
    if (any_failed) {
        throw GeometryError("zero-Doppler grid design failed for:" + failed.str());
    }

    ZeroDopplerGrid grid{0.0, 0.0, 0.0, 0.0, 0, 0, orbit, pfa.constants.wavelength,
                        pfa.constants.look_side};

    // Range spacing: the metric range step of one PFA row. Azimuth spacing:
    // the time step whose ground distance matches one PFA column.
    grid.dr = std::abs(pfa.affine.a11) * g.row_spacing;
    const ZdSolution scp_zd = zd_inverse_map(orbit, g.scp_ecef);
    const double probe_dt = 0.1;
    const StateVector s0 = orbit.state_at(scp_zd.eta);
    const RangeDoppler rd_mid{scp_zd.r, 0.0};
    const EcefPoint p0 =
        rrdot_to_surface(s0, rd_mid, ref_height, pfa.constants.look_side).point;
    const StateVector s1 = orbit.state_at(scp_zd.eta + probe_dt);
    const EcefPoint p1 =
        rrdot_to_surface(s1, rd_mid, ref_height, pfa.constants.look_side).point;
    const double ground_speed = norm(p1 - p0) / probe_dt;
    grid.dt = g.col_spacing / ground_speed;

    if (g.rows == 1 && g.cols == 1) {
        grid.r0 = r_min;
        grid.t0 = eta_min;
        grid.rows = 1;
        grid.lines = 1;
        return grid;
    }

    grid.r0 = r_min - kMarginPixels * grid.dr;
    grid.t0 = eta_min - kMarginPixels * grid.dt;
    grid.rows = static_cast<int>(std::ceil((r_max - r_min) / grid.dr)) + 2 * kMarginPixels + 1;
    grid.lines =
        static_cast<int>(std::ceil((eta_max - eta_min) / grid.dt)) + 2 * kMarginPixels + 1;

    if (!orbit.covers(grid.t0) || !orbit.covers(grid.time_of_line(grid.lines - 1))) {
        throw GeometryError("designed zero-Doppler grid extends outside the orbit span");
    }
    return grid;
}

std::optional<std::complex<float>> interpolate_complex(const ComplexRaster& src,
                                                       const ImageIndex& at) {
    if (!(at.row >= 0.0 && at.row <= src.rows - 1 && at.col >= 0.0 && at.col <= src.cols - 1)) {
        return std::nullopt;
    }
    int r0 = static_cast<int>(at.row);
    int c0 = static_cast<int>(at.col);
    if (r0 == src.rows - 1 && src.rows > 1) --r0;
    if (c0 == src.cols - 1 && src.cols > 1) --c0;
    const int r1 = std::min(r0 + 1, src.rows - 1);
    const int c1 = std::min(c0 + 1, src.cols - 1);
    const float wr = static_cast<float>(at.row - r0);
    const float wc = static_cast<float>(at.col - c0);

    const std::complex<float> top = (1.0f - wc) * src.at(r0, c0) + wc * src.at(r0, c1);
    const std::complex<float> bot = (1.0f - wc) * src.at(r1, c0) + wc * src.at(r1, c1);
    return (1.0f - wr) * top + wr * bot;
}

std::pair<ComplexRaster, ResampleReport> resample_pfa_to_zd(const ComplexRaster& src,
                                                            const PfaMapper& pfa,
                                                            const ZeroDopplerGrid& zd,
                                                            double ref_height, int workers) {
    if (src.rows != pfa.grid.rows || src.cols != pfa.grid.cols) {
        throw GeometryError("resample: SLC dimensions do not match the metadata grid");
    }
    if (workers <= 0) workers = default_worker_count();

    ComplexRaster out(zd.rows, zd.lines);
    const std::size_t total = out.samples.size();
    std::atomic<long long> valid{0};
    std::atomic<long long> solver_failures{0};

    // Ground round-trip error is sampled on an even stride of output pixels.
    const std::size_t stride = std::max<std::size_t>(1, total / kRoundtripSamplesCap);
    double max_roundtrip = 0.0;
    std::mutex roundtrip_mutex;

    parallel_for(zd.lines, workers, [&](int line) {
        const StateVector state = zd.orbit.state_at(zd.time_of_line(line));
        std::optional<double> hint;
        double local_max_roundtrip = 0.0;
        for (int row = 0; row < zd.rows; ++row) {
            const RangeDoppler rd{zd.range_of_row(row), 0.0};
            EcefPoint ground;
            try {
                double psi = 0.0;
                ground = rrdot_to_surface_ex(state, rd, ref_height, zd.look_side, hint, &psi)
                             .point;
                hint = psi;
            } catch (const GeometryError&) {
                solver_failures.fetch_add(1, std::memory_order_relaxed);
                hint.reset();
                continue;
            }
            const ImageIndex src_index = pfa_inverse_map(pfa, ground);
            const auto sample = interpolate_complex(src, src_index);
            if (!sample) continue;

            out.at(row, line) = *sample;
            valid.fetch_add(1, std::memory_order_relaxed);

            const std::size_t flat = static_cast<std::size_t>(row) * zd.lines + line;
            if (flat % stride == 0) {
                // Chain consistency: the ground point of the PFA index this
                // output pixel sampled, versus the output pixel's own ground.
                const SurfaceSolution back =
                    pfa_forward_map(pfa, src_index, ConstantHae{ref_height});
                local_max_roundtrip =
                    std::max(local_max_roundtrip, norm(back.point - ground));
            }
        }
        if (local_max_roundtrip > 0.0) {
            std::lock_guard<std::mutex> lock(roundtrip_mutex);
            max_roundtrip = std::max(max_roundtrip, local_max_roundtrip);
        }
    });

    if (solver_failures.load() * 2 > static_cast<long long>(total)) {
        throw GeometryError("resample: solver failed on more than half of the output pixels");
    }

    ResampleReport report;
    report.valid_fraction = static_cast<double>(valid.load()) / static_cast<double>(total);
    report.max_ground_roundtrip_error = max_roundtrip;
    return {std::move(out), report};
}

}  // namespace pfargeo
