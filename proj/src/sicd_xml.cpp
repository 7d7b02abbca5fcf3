#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pfargeo/errors.hpp"
#include "pfargeo/pfa_model.hpp"
#include "pfargeo/sicd_meta.hpp"

namespace pfargeo {

namespace {

using boost::property_tree::ptree;

// SICD namespace URIs vary by version; the geometry semantics of this subset
// do not. All element matching is on local names.
std::string local_name(const std::string& key) {
    const auto pos = key.rfind(':');
    return pos == std::string::npos ? key : key.substr(pos + 1);
}

const ptree* find_child(const ptree& node, const std::string& name) {
    for (const auto& [key, child] : node) {
        if (key == "<xmlattr>" || key == "<xmlcomment>") continue;
        if (local_name(key) == name) return &child;
    }
    return nullptr;
}

const ptree* find_path(const ptree& root, const std::string& path) {
    const ptree* node = &root;
    std::istringstream segments(path);
    std::string segment;
    while (std::getline(segments, segment, '/')) {
        node = find_child(*node, segment);
        if (!node) return nullptr;
    }
    return node;
}

const ptree& require_path(const ptree& root, const std::string& path) {
    const ptree* node = find_path(root, path);
    if (!node) {
        throw MetadataError("missing metadata element: " + path);
    }
    return *node;
}

double to_double(const ptree& node, const std::string& path) {
    const std::string text = node.get_value<std::string>();
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        return v;
    } catch (const std::exception&) {
        throw MetadataError("non-numeric value in metadata element: " + path);
    }
}

double require_double(const ptree& root, const std::string& path) {
    return to_double(require_path(root, path), path);
}

int attribute_int(const ptree& node, const std::string& name, int fallback) {
    const ptree* attrs = nullptr;
    for (const auto& [key, child] : node) {
        if (key == "<xmlattr>") {
            attrs = &child;
            break;
        }
    }
    if (!attrs) return fallback;
    const ptree* a = find_child(*attrs, name);
    return a ? a->get_value<int>(fallback) : fallback;
}

/// Coef children carry exponent1 (and exponent2 for 2-D) attributes.
Polynomial1D parse_poly1d(const ptree& node, const std::string& path) {
    std::map<int, double> terms;
    int max_exp = 0;
    bool any = false;
    for (const auto& [key, child] : node) {
        if (local_name(key) != "Coef") continue;
        const int e = attribute_int(child, "exponent1", 0);
        terms[e] = to_double(child, path);
        max_exp = std::max(max_exp, e);
        any = true;
    }
    if (!any) {
        throw MetadataError("missing metadata element: " + path + " (no Coef entries)");
    }
    std::vector<double> coeffs(static_cast<std::size_t>(max_exp) + 1, 0.0);
    for (const auto& [e, v] : terms) coeffs[static_cast<std::size_t>(e)] = v;
    return Polynomial1D{std::move(coeffs)};
}

Poly2D parse_poly2d(const ptree& node, const std::string& path) {
    std::map<std::pair<int, int>, double> terms;
    int max1 = 0, max2 = 0;
    bool any = false;
    for (const auto& [key, child] : node) {
        if (local_name(key) != "Coef") continue;
        const int e1 = attribute_int(child, "exponent1", 0);
        const int e2 = attribute_int(child, "exponent2", 0);
        terms[{e1, e2}] = to_double(child, path);
        max1 = std::max(max1, e1);
        max2 = std::max(max2, e2);
        any = true;
    }
    if (!any) {
        throw MetadataError("missing metadata element: " + path + " (no Coef entries)");
    }
    Poly2D p;
    p.coeffs.assign(static_cast<std::size_t>(max1) + 1,
                    std::vector<double>(static_cast<std::size_t>(max2) + 1, 0.0));
    for (const auto& [exps, v] : terms) {
        p.coeffs[static_cast<std::size_t>(exps.first)][static_cast<std::size_t>(exps.second)] = v;
    }
    return p;
}

Vec3 parse_xyz(const ptree& node, const std::string& path) {
    auto axis = [&](const char* name) {
        const ptree* child = find_child(node, name);
        if (!child) {
            throw MetadataError("missing metadata element: " + path + "/" + name);
        }
        return to_double(*child, path + "/" + name);
    };
    return {axis("X"), axis("Y"), axis("Z")};
}

}  // namespace

SicdMeta parse_sicd_xml(const std::string& text) {
    ptree doc;
    try {
        std::istringstream stream(text);
        boost::property_tree::read_xml(stream, doc);
    } catch (const boost::property_tree::xml_parser_error& e) {
        throw MetadataError(std::string("malformed SICD XML: ") + e.what());
    }
    if (doc.empty()) {
        throw MetadataError("empty SICD XML document");
    }
    // Step inside the root element (typically <SICD>).
    const ptree& root = doc.begin()->second;

    // Reject products whose image formation is not PFA.
    if (const ptree* algo = find_path(root, "ImageFormation/ImageFormAlgo")) {
        const std::string v = algo->get_value<std::string>();
        if (v != "PFA") {
            throw MetadataError("unsupported format: ImageFormation/ImageFormAlgo is '" + v +
                                "', only PFA images are supported");
        }
    }
    if (const ptree* type = find_path(root, "Grid/Type")) {
        const std::string v = type->get_value<std::string>();
        if (v != "RGAZIM") {
            throw MetadataError("unsupported format: Grid/Type is '" + v +
                                "', only RGAZIM PFA grids are supported");
        }
    }

    SicdMeta m;
    const ptree& scp = require_path(root, "GeoData/SCP");
    m.scp_ecef = parse_xyz(require_path(scp, "ECF"), "GeoData/SCP/ECF");
    m.scp_llh.latitude = require_double(scp, "LLH/Lat");
    m.scp_llh.longitude = require_double(scp, "LLH/Lon");
    m.scp_llh.height = require_double(scp, "LLH/HAE");

    m.scp_row = require_double(root, "ImageData/SCPPixel/Row");
    m.scp_col = require_double(root, "ImageData/SCPPixel/Col");
    m.rows = static_cast<int>(require_double(root, "ImageData/NumRows"));
    m.cols = static_cast<int>(require_double(root, "ImageData/NumCols"));
    if (m.rows <= 0 || m.cols <= 0) {
        throw MetadataError("ImageData/NumRows and NumCols must be positive");
    }

    m.row_spacing = require_double(root, "Grid/Row/SS");
    m.col_spacing = require_double(root, "Grid/Col/SS");
    if (!(m.row_spacing > 0.0) || !(m.col_spacing > 0.0)) {
        throw MetadataError("Grid/Row/SS and Grid/Col/SS must be positive");
    }

    m.time_coa_poly = parse_poly2d(require_path(root, "Grid/TimeCOAPoly"), "Grid/TimeCOAPoly");
    m.polar_ang_poly =
        parse_poly1d(require_path(root, "PFA/PolarAngPoly"), "PFA/PolarAngPoly");
    m.spatial_freq_sf_poly =
        parse_poly1d(require_path(root, "PFA/SpatialFreqSFPoly"), "PFA/SpatialFreqSFPoly");

    const ptree& arp = require_path(root, "Position/ARPPoly");
    m.arp_poly_x = parse_poly1d(require_path(arp, "X"), "Position/ARPPoly/X");
    m.arp_poly_y = parse_poly1d(require_path(arp, "Y"), "Position/ARPPoly/Y");
    m.arp_poly_z = parse_poly1d(require_path(arp, "Z"), "Position/ARPPoly/Z");

    const ptree* coa_pos = find_path(root, "SCPCOA/ARPPos");
    const ptree* coa_vel = find_path(root, "SCPCOA/ARPVel");
    if (coa_pos && coa_vel) {
        m.coa_state = CoaState{parse_xyz(*coa_pos, "SCPCOA/ARPPos"),
                               parse_xyz(*coa_vel, "SCPCOA/ARPVel")};
    } else if (coa_pos || coa_vel) {
        throw MetadataError(std::string("missing metadata element: ") +
                            (coa_pos ? "SCPCOA/ARPVel" : "SCPCOA/ARPPos"));
    }

    // Grid-provided center spatial frequency wins when present; otherwise
    // the transmit band midpoint.
    if (const ptree* kctr = find_path(root, "Grid/Row/KCtr")) {
        m.center_frequency = to_double(*kctr, "Grid/Row/KCtr") * kSpeedOfLight / 2.0;
    } else {
        const double fmin = require_double(root, "RadarCollection/TxFrequency/Min");
        const double fmax = require_double(root, "RadarCollection/TxFrequency/Max");
        m.center_frequency = 0.5 * (fmin + fmax);
    }
    if (!(m.center_frequency > 0.0)) {
        throw MetadataError("center frequency must be positive");
    }

    const std::string side =
        require_path(root, "SCPCOA/SideOfTrack").get_value<std::string>();
    if (side == "L") {
        m.side_of_track = LookSide::Left;
    } else if (side == "R") {
        m.side_of_track = LookSide::Right;
    } else {
        throw MetadataError("SCPCOA/SideOfTrack must be 'L' or 'R', got '" + side + "'");
    }

    if (const ptree* start = find_path(root, "Timeline/CollectStart")) {
        m.collect_start = start->get_value<std::string>();
    }
    return m;
}

double scp_consistency_distance(const SicdMeta& m) {
    return norm(llh_to_ecef(m.scp_llh) - m.scp_ecef);
}

Orbit orbit_from_arp_poly(const SicdMeta& m, double t_center, double half_window,
                          double spacing) {
    if (!(half_window > 0.0) || !(spacing > 0.0)) {
        throw GeometryError("orbit_from_arp_poly: window and spacing must be positive");
    }
    const Polynomial1D vx = poly_derivative(m.arp_poly_x);
    const Polynomial1D vy = poly_derivative(m.arp_poly_y);
    const Polynomial1D vz = poly_derivative(m.arp_poly_z);

    const int n = std::max(2, static_cast<int>(std::ceil(2.0 * half_window / spacing)) + 1);
    std::vector<StateVector> states;
    states.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = t_center - half_window + 2.0 * half_window * i / (n - 1);
        StateVector st;
        st.time = t;
        st.position = {poly_eval(m.arp_poly_x, t), poly_eval(m.arp_poly_y, t),
                       poly_eval(m.arp_poly_z, t)};
        st.velocity = {poly_eval(vx, t), poly_eval(vy, t), poly_eval(vz, t)};
        states.push_back(st);
    }
    return Orbit(std::move(states));
}

}  // namespace pfargeo
