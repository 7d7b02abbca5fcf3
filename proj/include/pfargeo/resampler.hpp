#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "pfargeo/mapping.hpp"
#include "pfargeo/zd_model.hpp"

namespace pfargeo {

/// Row-major complex SLC raster, 32-bit float per component.
struct ComplexRaster {
    int rows = 0;
    int cols = 0;
    std::vector<std::complex<float>> samples;

    ComplexRaster() = default;
    ComplexRaster(int r, int c) : rows(r), cols(c), samples(static_cast<std::size_t>(r) * c) {}

    std::complex<float>& at(int r, int c) {
        return samples[static_cast<std::size_t>(r) * cols + c];
    }
    const std::complex<float>& at(int r, int c) const {
        return samples[static_cast<std::size_t>(r) * cols + c];
    }
};

struct ResampleReport {
    double valid_fraction = 0.0;             ///< [0, 1]
    double max_ground_roundtrip_error = 0.0;  ///< meters, over sampled pixels
};

/// Design a Zero-Doppler grid covering the PFA scene at the reference
/// height: the four image corners are mapped to the ground, inverse-mapped
/// to (r, eta), and the bounding box is sampled at the PFA-equivalent metric
/// spacings (range: |a11| * row spacing; azimuth: time step matching the
/// azimuth pixel spacing over the ground speed). Multi-pixel scenes carry a
/// two-pixel margin on every side; a degenerate 1x1 source yields a 1x1 grid.
ZeroDopplerGrid design_zd_grid(const PfaMapper& pfa, double ref_height, const Orbit& orbit);

/// Bilinear interpolation of the complex raster (real and imaginary parts
/// independently). Out-of-bounds indices return nullopt.
std::optional<std::complex<float>> interpolate_complex(const ComplexRaster& src,
                                                       const ImageIndex& at);

/// Resample a PFA image onto a Zero-Doppler grid by chaining the
/// Zero-Doppler forward map with the PFA inverse map at the reference
/// height. Outside-source and solver-failed pixels are zero-filled and
/// excluded from valid_fraction; more than 50% failures is an error.
std::pair<ComplexRaster, ResampleReport> resample_pfa_to_zd(const ComplexRaster& src,
                                                            const PfaMapper& pfa,
                                                            const ZeroDopplerGrid& zd,
                                                            double ref_height,
                                                            int workers = 0);

}  // namespace pfargeo
