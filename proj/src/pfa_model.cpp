#include "pfargeo/pfa_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pfargeo/errors.hpp"

namespace pfargeo {

namespace {
constexpr double kTcoaToleranceSec = 1e-9;
constexpr double kDetThresholdFactor = 1e-12;
constexpr double kCoaPosWarnMeters = 1.0;
constexpr double kCoaVelWarnMps = 1e-3;
}  // namespace

double tcoa_max_deviation(const SicdMeta& meta) {
    const double half_rg = 0.5 * meta.rows * meta.row_spacing;
    const double half_az = 0.5 * meta.cols * meta.col_spacing;
    double worst = 0.0;
    for (std::size_t i = 0; i < meta.time_coa_poly.coeffs.size(); ++i) {
        const auto& row = meta.time_coa_poly.coeffs[i];
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (i == 0 && j == 0) continue;
            const double scale = std::pow(half_rg, static_cast<double>(i)) *
                                 std::pow(half_az, static_cast<double>(j));
            worst = std::max(worst, std::abs(row[j]) * scale);
        }
    }
    return worst;
}

double validate_constant_tcoa(const SicdMeta& meta) {
    if (meta.time_coa_poly.coeffs.empty() || meta.time_coa_poly.coeffs[0].empty()) {
        throw MetadataError("time-of-COA polynomial is empty");
    }
    const double dev = tcoa_max_deviation(meta);
    if (dev > kTcoaToleranceSec) {
        std::ostringstream os;
        os << "unsupported geometry: time-of-COA polynomial is not constant "
              "(deviation over the image is "
           << dev << " s; only constant-t_COA Spotlight images are supported)";
        throw GeometryError(os.str());
    }
    return meta.time_coa_poly.coeffs[0][0];
}

PfaConstants derive_pfa_constants(const SicdMeta& meta, std::vector<std::string>* warnings) {
    PfaConstants k;
    k.t_coa = validate_constant_tcoa(meta);

    if (meta.polar_ang_poly.coeffs.empty()) {
        throw MetadataError("missing metadata field: PFA/PolarAngPoly");
    }
    if (meta.spatial_freq_sf_poly.coeffs.empty()) {
        throw MetadataError("missing metadata field: PFA/SpatialFreqSFPoly");
    }
    if (meta.arp_poly_x.coeffs.empty() || meta.arp_poly_y.coeffs.empty() ||
        meta.arp_poly_z.coeffs.empty()) {
        throw MetadataError("missing metadata field: Position/ARPPoly");
    }
    if (!(meta.center_frequency > 0.0)) {
        throw MetadataError("missing metadata field: center frequency");
    }

    k.theta_coa = poly_eval(meta.polar_ang_poly, k.t_coa);
    k.dtheta_dt = poly_eval(poly_derivative(meta.polar_ang_poly), k.t_coa);
    k.ksf = poly_eval(meta.spatial_freq_sf_poly, k.theta_coa);
    k.dksf_dtheta = poly_eval(poly_derivative(meta.spatial_freq_sf_poly), k.theta_coa);

    const EcefPoint poly_pos{poly_eval(meta.arp_poly_x, k.t_coa),
                             poly_eval(meta.arp_poly_y, k.t_coa),
                             poly_eval(meta.arp_poly_z, k.t_coa)};
    const Vec3 poly_vel{poly_eval(poly_derivative(meta.arp_poly_x), k.t_coa),
                        poly_eval(poly_derivative(meta.arp_poly_y), k.t_coa),
                        poly_eval(poly_derivative(meta.arp_poly_z), k.t_coa)};

    if (meta.coa_state) {
        // Provider-stated COA values are authoritative; disagreement with the
        // polynomial indicates corrupt metadata.
        k.arp_pos = meta.coa_state->position;
        k.arp_vel = meta.coa_state->velocity;
        if (warnings) {
            const double dp = norm(k.arp_pos - poly_pos);
            const double dv = norm(k.arp_vel - poly_vel);
            if (dp > kCoaPosWarnMeters || dv > kCoaVelWarnMps) {
                std::ostringstream os;
                os << "COA state disagrees with ARP polynomial at t_COA by " << dp << " m / "
                   << dv << " m/s";
                warnings->push_back(os.str());
            }
        }
    } else {
        k.arp_pos = poly_pos;
        k.arp_vel = poly_vel;
    }

    const Vec3 scp_to_arp = k.arp_pos - meta.scp_ecef;
    k.r_scp = norm(scp_to_arp);
    if (!(k.r_scp > 0.0)) {
        throw MetadataError("SCP coincides with the ARP position");
    }
    k.rdot_scp = dot(k.arp_vel, scp_to_arp) / k.r_scp;
    k.wavelength = kSpeedOfLight / meta.center_frequency;
    k.look_side = meta.side_of_track;
    return k;
}

AffineModel compute_affine(const PfaConstants& k) {
    const double ct = std::cos(k.theta_coa);
    const double st = std::sin(k.theta_coa);

    AffineModel m;
    m.a11 = k.ksf * ct;
    m.a12 = k.ksf * st;
    m.a21 = (k.dksf_dtheta * ct - k.ksf * st) * k.dtheta_dt;
    m.a22 = (k.dksf_dtheta * st + k.ksf * ct) * k.dtheta_dt;
    m.r_scp = k.r_scp;
    m.rdot_scp = k.rdot_scp;

    const double max_entry = std::max({std::abs(m.a11), std::abs(m.a12), std::abs(m.a21),
                                       std::abs(m.a22)});
    if (std::abs(m.det()) <= kDetThresholdFactor * max_entry * max_entry) {
        throw GeometryError("degenerate affine geometry: |det| below threshold");
    }
    return m;
}

RangeDoppler image_to_rrdot(const AffineModel& m, const ImageCoord& c) {
    RangeDoppler rd;
    rd.r = m.r_scp + m.a11 * c.rg + m.a12 * c.az;
    rd.rdot = m.rdot_scp + m.a21 * c.rg + m.a22 * c.az;
    if (!(rd.r > 0.0)) {
        throw GeometryError("image coordinate maps to non-positive slant range");
    }
    return rd;
}

ImageCoord rrdot_to_image(const AffineModel& m, const RangeDoppler& rd) {
    const double det = m.det();
    const double max_entry = std::max({std::abs(m.a11), std::abs(m.a12), std::abs(m.a21),
                                       std::abs(m.a22)});
    if (std::abs(det) <= kDetThresholdFactor * max_entry * max_entry) {
        throw GeometryError("degenerate affine geometry: matrix is singular");
    }
    const double dr = rd.r - m.r_scp;
    const double drd = rd.rdot - m.rdot_scp;
    return {(m.a22 * dr - m.a12 * drd) / det, (-m.a21 * dr + m.a11 * drd) / det};
}

ScanlineModel scanline_model(const AffineModel& m, const PfaConstants& k, double az) {
    if (m.a11 == 0.0) {
        throw GeometryError("scanline model degenerate: range step a11 is zero");
    }
    ScanlineModel line;
    line.r0 = m.r_scp + m.a12 * az;
    line.dr = m.a11;
    line.rdot0 = m.rdot_scp + m.a22 * az;
    line.drdot = m.a21;
    line.state = StateVector{k.t_coa, k.arp_pos, k.arp_vel};
    return line;
}

double rdot_to_doppler(double rdot, double wavelength) {
    return -2.0 * rdot / wavelength;
}

ImageCoord index_to_coord(const GridInfo& g, const ImageIndex& i) {
    return {(i.row - g.scp_row) * g.row_spacing, (i.col - g.scp_col) * g.col_spacing};
}

ImageIndex coord_to_index(const GridInfo& g, const ImageCoord& c) {
    return {g.scp_row + c.rg / g.row_spacing, g.scp_col + c.az / g.col_spacing};
}

GridInfo grid_from_meta(const SicdMeta& meta) {
    if (!(meta.scp_row >= 0.0 && meta.scp_row < meta.rows) ||
        !(meta.scp_col >= 0.0 && meta.scp_col < meta.cols)) {
        throw MetadataError("SCP pixel lies outside the image raster");
    }
    GridInfo g;
    g.scp_row = meta.scp_row;
    g.scp_col = meta.scp_col;
    g.row_spacing = meta.row_spacing;
    g.col_spacing = meta.col_spacing;
    g.rows = meta.rows;
    g.cols = meta.cols;
    g.scp_ecef = meta.scp_ecef;
    g.scp_height = meta.scp_llh.height;
    return g;
}

}  // namespace pfargeo
