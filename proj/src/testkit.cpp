#include "pfargeo/testkit.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "pfargeo/errors.hpp"
#include "pfargeo/geodesy.hpp"

namespace pfargeo::testkit {

namespace {

constexpr double kScanStep = 1e-5;     // rad, full-circle oracle scan
constexpr double kBisectTol = 1e-10;   // rad
constexpr double kAcceptHeight = 1e-6;  // m, tangent acceptance (matches solver)

/// Expand sum_k d[k] (t - t0)^k into power-basis coefficients.
Polynomial1D shifted_poly(const std::vector<double>& d, double t0) {
    std::vector<double> c(d.size(), 0.0);
    for (std::size_t k = 0; k < d.size(); ++k) {
        double binom = 1.0;  // C(k, j), built up over j
        for (std::size_t j = 0; j <= k; ++j) {
            if (j > 0) {
                binom = binom * static_cast<double>(k - j + 1) / static_cast<double>(j);
            }
            c[j] += d[k] * binom * std::pow(-t0, static_cast<double>(k - j));
        }
    }
    return Polynomial1D{std::move(c)};
}

struct PresetParams {
    double orbit_radius;
    double orbit_speed;
    Vec3 plane_x;
    Vec3 plane_y;
    double t_coa;
    double scp_range;
    double scp_rdot;
    LookSide side;
    double theta;
    double dtheta_dt;
    double ksf;
    double dksf_dtheta;
    double center_frequency;
    int rows;
    int cols;
    double row_spacing;
    double col_spacing;
    double scp_row;
    double scp_col;
};

PresetParams preset_params(ScenePreset preset) {
    switch (preset) {
        case ScenePreset::EquatorialNadirOffset:
            return {7.0e6,  7.5e3, {1, 0, 0}, {0, 1, 0}, 150.0, 6.65e5, 0.0,
                    LookSide::Right, 0.04, 0.020, 1.005, 0.03, 9.65e9,
                    512, 512, 0.5, 0.7, 256.0, 256.0};
        case ScenePreset::MidLatitudeSquint: {
            const double lat = 40.0 * M_PI / 180.0;
            const double heading = 25.0 * M_PI / 180.0;
            const Vec3 px{std::cos(lat), 0.0, std::sin(lat)};
            const Vec3 k{-std::sin(lat), 0.0, std::cos(lat)};
            const Vec3 py = std::cos(heading) * Vec3{0, 1, 0} + std::sin(heading) * k;
            return {7.05e6, 7.48e3, px, py, 150.0, 8.1e5, 55.0,
                    LookSide::Left, -0.12, 0.035, 0.985, -0.05, 5.4e9,
                    512, 512, 1.25, 0.9, 255.5, 250.0};
        }
        case ScenePreset::HighIncidence: {
            const Vec3 px{1, 0, 0};
            const double dip = -10.0 * M_PI / 180.0;
            const Vec3 py{0.0, std::cos(dip), std::sin(dip)};
            return {6.9e6,  7.61e3, px, py, 150.0, 1.05e6, -20.0,
                    LookSide::Right, 0.18, 0.008, 1.015, 0.08, 9.6e9,
                    512, 512, 0.4, 0.6, 256.0, 256.0};
        }
    }
    throw GeometryError("unknown scene preset");
}

double side_indicator(const StateVector& state, const EcefPoint& p) {
    return dot(cross(state.velocity, p - state.position), state.position);
}

}  // namespace

ScenePreset preset_from_index(int index) {
    switch (index) {
        case 0: return ScenePreset::EquatorialNadirOffset;
        case 1: return ScenePreset::MidLatitudeSquint;
        case 2: return ScenePreset::HighIncidence;
        default: throw GeometryError("scene preset index out of range");
    }
}

std::string preset_name(ScenePreset preset) {
    switch (preset) {
        case ScenePreset::EquatorialNadirOffset: return "equatorial-nadir-offset";
        case ScenePreset::MidLatitudeSquint: return "mid-latitude-squint";
        case ScenePreset::HighIncidence: return "high-incidence";
    }
    return "unknown";
}

StateVector CircularOrbit::state_at(double t) const {
    const double omega = speed / radius;
    const double ang = omega * (t - t_ref);
    const double c = std::cos(ang);
    const double s = std::sin(ang);
    StateVector st;
    st.time = t;
    st.position = radius * (c * plane_x + s * plane_y);
    st.velocity = speed * (-s * plane_x + c * plane_y);
    return st;
}

Orbit CircularOrbit::sample(double t_begin, double t_end, double spacing) const {
    std::vector<StateVector> states;
    for (double t = t_begin; t <= t_end + 1e-9; t += spacing) {
        states.push_back(state_at(t));
    }
    return Orbit(std::move(states));
}

EcefPoint brute_force_rrdot(const StateVector& state, const RangeDoppler& rd, double height,
                            LookSide look) {
    const double vmag = norm(state.velocity);
    if (!(vmag > 0.0) || !(rd.r > 0.0)) {
        throw GeometryError("brute_force_rrdot: invalid state or range");
    }
    const double c = -rd.rdot / vmag;
    if (std::abs(c) > 1.0) {
        throw GeometryError("brute_force_rrdot: |rdot| exceeds platform speed");
    }
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const Vec3 vhat = state.velocity / vmag;

    // World-axis Gram-Schmidt basis; deliberately different from the
    // solver's nadir-aligned construction.
    Vec3 seed{0.0, 0.0, 1.0};
    if (std::abs(dot(seed, vhat)) > 0.9) seed = Vec3{1.0, 0.0, 0.0};
    const Vec3 w1 = normalized(seed - dot(seed, vhat) * vhat);
    const Vec3 w2 = cross(vhat, w1);

    auto point_at = [&](double phi) {
        const Vec3 u = c * vhat + s * (std::cos(phi) * w1 + std::sin(phi) * w2);
        return state.position + rd.r * u;
    };
    auto f_at = [&](double phi) { return height_above_ellipsoid(point_at(phi)) - height; };

    const double want = (look == LookSide::Left) ? 1.0 : -1.0;
    const int steps = static_cast<int>(std::ceil(2.0 * M_PI / kScanStep));
    double prev_phi = 0.0;
    double prev_f = f_at(0.0);
    double min_f = prev_f, max_f = prev_f;
    double best_phi = 0.0;
    double best_abs = std::abs(prev_f);

    // Incremental rotation avoids two trig calls per scan step; the
    // accumulated rounding over a full circle is far below the scan step
    // and the bisection below re-evaluates with exact trig.
    const double step_c = std::cos(kScanStep);
    const double step_s = std::sin(kScanStep);
    double cos_phi = 1.0;
    double sin_phi = 0.0;

    for (int i = 1; i <= steps; ++i) {
        const double phi = std::min(2.0 * M_PI, kScanStep * i);
        const double next_cos = cos_phi * step_c - sin_phi * step_s;
        const double next_sin = sin_phi * step_c + cos_phi * step_s;
        cos_phi = next_cos;
        sin_phi = next_sin;
        const Vec3 u = c * vhat + s * (cos_phi * w1 + sin_phi * w2);
        const double f =
            height_above_ellipsoid(state.position + rd.r * u) - height;
        if (prev_f * f <= 0.0) {
            double lo = prev_phi, hi = phi, flo = prev_f;
            while (hi - lo > kBisectTol) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f_at(mid);
                if (flo * fm <= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            const double root = 0.5 * (lo + hi);
            const EcefPoint p = point_at(root);
            const double side = side_indicator(state, p);
            if (side * want >= 0.0 || std::abs(side) < 1e-3 * rd.r * vmag * norm(state.position)) {
                return p;
            }
        }
        min_f = std::min(min_f, f);
        max_f = std::max(max_f, f);
        if (std::abs(f) < best_abs) {
            best_abs = std::abs(f);
            best_phi = phi;
        }
        prev_phi = phi;
        prev_f = f;
    }

    // No sign change anywhere: polish the closest extremum by bisecting the
    // derivative of f, so tangent verdicts and positions agree with the
    // library solver's.
    {
        const double h = 1e-6;
        auto fprime = [&](double phi) { return (f_at(phi + h) - f_at(phi - h)) / (2.0 * h); };
        double a = best_phi - kScanStep, b = best_phi + kScanStep;
        double da = fprime(a);
        double db = fprime(b);
        if (da * db <= 0.0) {
            for (int i = 0; i < 60 && (b - a) > 1e-12; ++i) {
                const double mid = 0.5 * (a + b);
                const double dm = fprime(mid);
                if (da * dm <= 0.0) {
                    b = mid;
                    db = dm;
                } else {
                    a = mid;
                    da = dm;
                }
            }
        }
        const double phi_ext = 0.5 * (a + b);
        if (std::abs(f_at(phi_ext)) < kAcceptHeight) {
            return point_at(phi_ext);
        }
    }
    std::ostringstream os;
    os << "brute_force_rrdot: no intersection on the " << (want > 0 ? "Left" : "Right")
       << " side; height residual spans [" << min_f << ", " << max_f << "] m";
    throw NoSolutionError(os.str());
}

double finite_diff_rdot(const Orbit& orbit, const EcefPoint& target, double eta, double h) {
    const StateVector ahead = orbit.state_at(eta + h);
    const StateVector behind = orbit.state_at(eta - h);
    return (norm(ahead.position - target) - norm(behind.position - target)) / (2.0 * h);
}

SolverCase random_solver_case(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> alt_draw(5.5e5, 6.5e5);
    std::uniform_real_distribution<double> height_draw(-100.0, 500.0);
    std::uniform_real_distribution<double> cross_draw(1.7e4, 2.8e5);
    std::uniform_real_distribution<double> wedge(-1.0, 1.0);

    SolverCase out;
    Vec3 dir{unit(rng), unit(rng), unit(rng)};
    while (norm(dir) < 0.1) dir = Vec3{unit(rng), unit(rng), unit(rng)};
    dir = normalized(dir);
    out.state.position = (wgs84::kSemiMajorAxis + alt_draw(rng)) * dir;
    Vec3 vdir{unit(rng), unit(rng), unit(rng)};
    vdir = vdir - dot(vdir, dir) * dir;
    while (norm(vdir) < 0.1) {
        vdir = Vec3{unit(rng), unit(rng), unit(rng)};
        vdir = vdir - dot(vdir, dir) * dir;
    }
    out.state.velocity = 7.5e3 * normalized(vdir);

    // Local ground frame under the platform.
    const Vec3 up = dir;
    const Vec3 along = normalized(out.state.velocity - dot(out.state.velocity, up) * up);
    const Vec3 across = cross(up, along);

    const LlhPoint nadir = ecef_to_llh(out.state.position);
    const EcefPoint nadir_ground = llh_to_ecef({nadir.latitude, nadir.longitude, 0.0});

    out.height = height_draw(rng);
    const double cross_m = cross_draw(rng) * (wedge(rng) < 0.0 ? -1.0 : 1.0);
    const double along_m = wedge(rng) * std::abs(cross_m);
    const EcefPoint rough = nadir_ground + cross_m * across + along_m * along;
    const LlhPoint rough_llh = ecef_to_llh(rough);
    out.target = llh_to_ecef({rough_llh.latitude, rough_llh.longitude, out.height});

    const Vec3 to_platform = out.state.position - out.target;
    out.rrdot.r = norm(to_platform);
    out.rrdot.rdot = dot(out.state.velocity, to_platform) / out.rrdot.r;
    const double side =
        dot(cross(out.state.velocity, out.target - out.state.position), out.state.position);
    out.look = side > 0.0 ? LookSide::Left : LookSide::Right;
    return out;
}

SyntheticScene make_synthetic_scene(std::uint64_t seed, ScenePreset preset, int probe_count) {
    const PresetParams p = preset_params(preset);
    const CircularOrbit circ{p.orbit_radius, p.orbit_speed, p.plane_x, p.plane_y, p.t_coa};
    const StateVector coa = circ.state_at(p.t_coa);

    const EcefPoint scp = brute_force_rrdot(coa, {p.scp_range, p.scp_rdot}, 0.0, p.side);

    PfaConstants truth;
    truth.arp_pos = coa.position;
    truth.arp_vel = coa.velocity;
    truth.r_scp = norm(coa.position - scp);
    truth.rdot_scp = dot(coa.velocity, coa.position - scp) / truth.r_scp;
    truth.theta_coa = p.theta;
    truth.dtheta_dt = p.dtheta_dt;
    truth.ksf = p.ksf;
    truth.dksf_dtheta = p.dksf_dtheta;
    truth.t_coa = p.t_coa;
    truth.wavelength = kSpeedOfLight / p.center_frequency;
    truth.look_side = p.side;

    SicdMeta meta;
    meta.scp_ecef = scp;
    meta.scp_llh = ecef_to_llh(scp);
    meta.scp_row = p.scp_row;
    meta.scp_col = p.scp_col;
    meta.rows = p.rows;
    meta.cols = p.cols;
    meta.row_spacing = p.row_spacing;
    meta.col_spacing = p.col_spacing;
    meta.time_coa_poly.coeffs = {{p.t_coa}};
    // Degree-3 / degree-2 wrappers that evaluate to exactly the chosen
    // values and derivatives at t_COA (resp. theta_COA).
    meta.polar_ang_poly = shifted_poly({p.theta, p.dtheta_dt, 2e-6, 1e-9}, p.t_coa);
    meta.spatial_freq_sf_poly = shifted_poly({p.ksf, p.dksf_dtheta, 5e-3}, p.theta);
    const double omega = p.orbit_speed / p.orbit_radius;
    const double w2 = omega * omega;
    auto taylor_axis = [&](double pos, double vel) {
        return shifted_poly({pos, vel, -w2 * pos / 2.0, -w2 * vel / 6.0}, p.t_coa);
    };
    meta.arp_poly_x = taylor_axis(coa.position.x, coa.velocity.x);
    meta.arp_poly_y = taylor_axis(coa.position.y, coa.velocity.y);
    meta.arp_poly_z = taylor_axis(coa.position.z, coa.velocity.z);
    meta.coa_state = CoaState{coa.position, coa.velocity};
    meta.center_frequency = p.center_frequency;
    meta.side_of_track = p.side;

    // The generator evaluates the matrix expressions itself so probe truth
    // never flows through the library model.
    const double ct = std::cos(p.theta);
    const double st = std::sin(p.theta);
    const double a11 = p.ksf * ct;
    const double a12 = p.ksf * st;
    const double a21 = (p.dksf_dtheta * ct - p.ksf * st) * p.dtheta_dt;
    const double a22 = (p.dksf_dtheta * st + p.ksf * ct) * p.dtheta_dt;
    const double det = a11 * a22 - a12 * a21;

    SyntheticScene scene{circ.sample(p.t_coa - 150.0, p.t_coa + 150.0, 10.0), std::move(meta),
                         truth, {}, 0.0};

    // Probes: ground points near the SCP, drawn on the surface and kept when
    // they land inside the image with a margin. Truth (R, Rdot) is direct
    // geometry; the pixel comes from the generator's own 2x2 inverse.
    std::mt19937_64 rng(seed);
    const double half_rg = 0.5 * p.rows * p.row_spacing;
    const double half_az = 0.5 * p.cols * p.col_spacing;
    const double reach = 0.9 * std::max(half_rg, half_az);
    const double deg_per_meter = 1.0 / 111320.0;
    std::uniform_real_distribution<double> offset(-reach * deg_per_meter,
                                                  reach * deg_per_meter);
    const double margin = 8.0;
    const LlhPoint scp_llh = scene.meta.scp_llh;
    const double cos_lat = std::cos(scp_llh.latitude * M_PI / 180.0);

    int attempts = 0;
    const int max_attempts = probe_count * 400;
    while (static_cast<int>(scene.probes.size()) < probe_count && attempts < max_attempts) {
        ++attempts;
        LlhPoint llh;
        llh.latitude = scp_llh.latitude + offset(rng);
        llh.longitude = scp_llh.longitude + offset(rng) / std::max(0.2, cos_lat);
        llh.height = 0.0;
        const EcefPoint t = llh_to_ecef(llh);

        const Vec3 to_platform = truth.arp_pos - t;
        const double r = norm(to_platform);
        const double rdot = dot(truth.arp_vel, to_platform) / r;
        const double rg = (a22 * (r - truth.r_scp) - a12 * (rdot - truth.rdot_scp)) / det;
        const double az = (-a21 * (r - truth.r_scp) + a11 * (rdot - truth.rdot_scp)) / det;
        const double row = p.scp_row + rg / p.row_spacing;
        const double col = p.scp_col + az / p.col_spacing;
        if (row < margin || row > p.rows - 1 - margin || col < margin ||
            col > p.cols - 1 - margin) {
            continue;
        }
        scene.probes.push_back(Probe{{row, col}, {rg, az}, {r, rdot}, t});
    }
    if (static_cast<int>(scene.probes.size()) < probe_count) {
        throw GeometryError("make_synthetic_scene: probe sampling failed to fill the image");
    }
    return scene;
}

}  // namespace pfargeo::testkit
