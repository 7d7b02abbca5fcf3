#pragma once

#include <vector>

#include "pfargeo/pfa_model.hpp"
#include "pfargeo/rd_solver.hpp"

namespace pfargeo {

/// Bundle of everything needed to map between PFA pixels and the ground.
struct PfaMapper {
    PfaConstants constants;
    AffineModel affine;
    GridInfo grid;

    StateVector coa_state() const {
        return {constants.t_coa, constants.arp_pos, constants.arp_vel};
    }
};

PfaMapper make_pfa_mapper(const SicdMeta& meta, std::vector<std::string>* warnings = nullptr);

/// Image-to-ground for one pixel: affine to (R, Rdot), then the
/// Range-Doppler solve against the surface.
SurfaceSolution pfa_forward_map(const PfaMapper& m, const ImageIndex& index,
                                const Surface& surface);

/// Ground-to-image for one point: R and Rdot directly from the shared COA
/// state, then the inverse affine. No solver involved.
ImageIndex pfa_inverse_map(const PfaMapper& m, const EcefPoint& target);

/// Range-Doppler pair of a ground point seen from the COA state.
RangeDoppler rrdot_of_target(const PfaConstants& k, const EcefPoint& target);

/// Whole-grid forward mapping, decimated by `decimate` in both directions.
/// Outer loop over azimuth lines (each line shares one scanline model and
/// platform state), parallelized across lines; per-pixel solver failures
/// become NaN triples and are counted.
struct GeocodeResult {
    int out_rows = 0;
    int out_cols = 0;
    std::vector<double> latitude;   // row-major out_rows x out_cols, degrees
    std::vector<double> longitude;  // degrees
    std::vector<double> height;     // meters
    long long failures = 0;
};

GeocodeResult geocode_grid(const PfaMapper& m, const Surface& surface, int decimate,
                           int workers);

}  // namespace pfargeo
