#include <json.hpp>

#include <string>

#include "pfargeo/errors.hpp"
#include "pfargeo/sicd_meta.hpp"

namespace pfargeo {

namespace {

using nlohmann::json;

const json& require_key(const json& j, const std::string& key) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw MetadataError("missing JSON sidecar key: " + key);
    }
    return *it;
}

double require_number(const json& j, const std::string& key) {
    const json& v = require_key(j, key);
    if (!v.is_number()) {
        throw MetadataError("JSON sidecar key is not a number: " + key);
    }
    return v.get<double>();
}

std::vector<double> number_array(const json& v, const std::string& key) {
    if (!v.is_array() || v.empty()) {
        throw MetadataError("JSON sidecar key is not a non-empty array: " + key);
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) {
            throw MetadataError("JSON sidecar key has a non-numeric entry: " + key);
        }
        out.push_back(e.get<double>());
    }
    return out;
}

Vec3 require_vec3(const json& j, const std::string& key) {
    const auto a = number_array(require_key(j, key), key);
    if (a.size() != 3) {
        throw MetadataError("JSON sidecar key must have 3 entries: " + key);
    }
    return {a[0], a[1], a[2]};
}

}  // namespace

SicdMeta parse_meta_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw MetadataError(std::string("malformed JSON sidecar: ") + e.what());
    }
    if (!j.is_object()) {
        throw MetadataError("JSON sidecar must be an object");
    }

    SicdMeta m;
    m.scp_ecef = require_vec3(j, "scp_ecef");
    const Vec3 llh = require_vec3(j, "scp_llh");
    m.scp_llh = {llh.x, llh.y, llh.z};

    const auto pixel = number_array(require_key(j, "scp_pixel"), "scp_pixel");
    if (pixel.size() != 2) throw MetadataError("JSON sidecar key must have 2 entries: scp_pixel");
    m.scp_row = pixel[0];
    m.scp_col = pixel[1];

    const auto shape = number_array(require_key(j, "shape"), "shape");
    if (shape.size() != 2) throw MetadataError("JSON sidecar key must have 2 entries: shape");
    m.rows = static_cast<int>(shape[0]);
    m.cols = static_cast<int>(shape[1]);
    if (m.rows <= 0 || m.cols <= 0) {
        throw MetadataError("JSON sidecar shape must be positive");
    }

    const auto spacing = number_array(require_key(j, "spacing"), "spacing");
    if (spacing.size() != 2) throw MetadataError("JSON sidecar key must have 2 entries: spacing");
    m.row_spacing = spacing[0];
    m.col_spacing = spacing[1];
    if (!(m.row_spacing > 0.0) || !(m.col_spacing > 0.0)) {
        throw MetadataError("JSON sidecar spacing must be positive");
    }

    const json& tcoa = require_key(j, "time_coa_poly");
    if (!tcoa.is_array() || tcoa.empty()) {
        throw MetadataError("JSON sidecar key is not a non-empty array: time_coa_poly");
    }
    for (const auto& row : tcoa) {
        m.time_coa_poly.coeffs.push_back(number_array(row, "time_coa_poly"));
    }

    m.polar_ang_poly =
        Polynomial1D{number_array(require_key(j, "polar_ang_poly"), "polar_ang_poly")};
    m.spatial_freq_sf_poly = Polynomial1D{
        number_array(require_key(j, "spatial_freq_sf_poly"), "spatial_freq_sf_poly")};

    const json& arp = require_key(j, "arp_poly");
    m.arp_poly_x = Polynomial1D{number_array(require_key(arp, "x"), "arp_poly.x")};
    m.arp_poly_y = Polynomial1D{number_array(require_key(arp, "y"), "arp_poly.y")};
    m.arp_poly_z = Polynomial1D{number_array(require_key(arp, "z"), "arp_poly.z")};

    if (const auto it = j.find("coa_state"); it != j.end() && !it->is_null()) {
        CoaState coa;
        coa.position = require_vec3(*it, "pos");
        coa.velocity = require_vec3(*it, "vel");
        m.coa_state = coa;
    }

    m.center_frequency = require_number(j, "center_frequency_hz");
    if (!(m.center_frequency > 0.0)) {
        throw MetadataError("JSON sidecar center_frequency_hz must be positive");
    }

    const json& side = require_key(j, "side_of_track");
    const std::string s = side.is_string() ? side.get<std::string>() : std::string();
    if (s == "L") {
        m.side_of_track = LookSide::Left;
    } else if (s == "R") {
        m.side_of_track = LookSide::Right;
    } else {
        throw MetadataError("JSON sidecar side_of_track must be \"L\" or \"R\"");
    }

    if (const auto it = j.find("collect_start"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) {
            throw MetadataError("JSON sidecar collect_start must be a string");
        }
        m.collect_start = it->get<std::string>();
    }
    return m;
}

std::string meta_to_json(const SicdMeta& m) {
    json j;
    j["scp_ecef"] = {m.scp_ecef.x, m.scp_ecef.y, m.scp_ecef.z};
    j["scp_llh"] = {m.scp_llh.latitude, m.scp_llh.longitude, m.scp_llh.height};
    j["scp_pixel"] = {m.scp_row, m.scp_col};
    j["shape"] = {m.rows, m.cols};
    j["spacing"] = {m.row_spacing, m.col_spacing};
    j["time_coa_poly"] = m.time_coa_poly.coeffs;
    j["polar_ang_poly"] = m.polar_ang_poly.coeffs;
    j["spatial_freq_sf_poly"] = m.spatial_freq_sf_poly.coeffs;
    j["arp_poly"] = {{"x", m.arp_poly_x.coeffs},
                     {"y", m.arp_poly_y.coeffs},
                     {"z", m.arp_poly_z.coeffs}};
    if (m.coa_state) {
        j["coa_state"] = {
            {"pos", {m.coa_state->position.x, m.coa_state->position.y, m.coa_state->position.z}},
            {"vel", {m.coa_state->velocity.x, m.coa_state->velocity.y, m.coa_state->velocity.z}}};
    }
    j["center_frequency_hz"] = m.center_frequency;
    j["side_of_track"] = std::string(1, look_side_char(m.side_of_track));
    if (m.collect_start) {
        j["collect_start"] = *m.collect_start;
    }
    return j.dump(2) + "\n";
}

SicdMeta parse_meta_auto(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        throw MetadataError("empty metadata document");
    }
    return text[first] == '<' ? parse_sicd_xml(text) : parse_meta_json(text);
}

}  // namespace pfargeo
