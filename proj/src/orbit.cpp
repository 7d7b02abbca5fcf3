#include "pfargeo/orbit.hpp"

#include <algorithm>
#include <string>

#include "pfargeo/errors.hpp"

namespace pfargeo {

Orbit::Orbit(std::vector<StateVector> states) : states_(std::move(states)) {
    if (states_.size() < 2) {
        throw GeometryError("Orbit: need at least two state vectors");
    }
    for (std::size_t i = 1; i < states_.size(); ++i) {
        if (!(states_[i].time > states_[i - 1].time)) {
            throw GeometryError("Orbit: state vector times must be strictly increasing");
        }
    }
}

std::size_t Orbit::interval_index(double t) const {
    if (!covers(t)) {
        throw GeometryError("Orbit: time " + std::to_string(t) + " s outside span [" +
                            std::to_string(start_time()) + ", " + std::to_string(end_time()) +
                            "] s; extrapolation is not supported");
    }
    auto it = std::upper_bound(states_.begin(), states_.end(), t,
                               [](double v, const StateVector& s) { return v < s.time; });
    std::size_t hi = static_cast<std::size_t>(it - states_.begin());
    if (hi == 0) hi = 1;
    if (hi == states_.size()) hi = states_.size() - 1;
    return hi - 1;
}

StateVector Orbit::state_at(double t) const {
    const std::size_t i = interval_index(t);
    const StateVector& s0 = states_[i];
    const StateVector& s1 = states_[i + 1];
    const double h = s1.time - s0.time;
    const double s = (t - s0.time) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;

    // Hermite basis and its derivative.
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;

    const double d00 = (6.0 * s2 - 6.0 * s) / h;
    const double d10 = 3.0 * s2 - 4.0 * s + 1.0;
    const double d01 = (-6.0 * s2 + 6.0 * s) / h;
    const double d11 = 3.0 * s2 - 2.0 * s;

    StateVector out;
    out.time = t;
    out.position = h00 * s0.position + (h10 * h) * s0.velocity + h01 * s1.position +
                   (h11 * h) * s1.velocity;
    out.velocity = d00 * s0.position + d10 * s0.velocity + d01 * s1.position + d11 * s1.velocity;
    return out;
}

Vec3 Orbit::acceleration_at(double t) const {
    const std::size_t i = interval_index(t);
    const StateVector& s0 = states_[i];
    const StateVector& s1 = states_[i + 1];
    const double h = s1.time - s0.time;
    const double s = (t - s0.time) / h;

    const double a00 = (12.0 * s - 6.0) / (h * h);
    const double a10 = (6.0 * s - 4.0) / h;
    const double a01 = (6.0 - 12.0 * s) / (h * h);
    const double a11 = (6.0 * s - 2.0) / h;

    return a00 * s0.position + a10 * s0.velocity + a01 * s1.position + a11 * s1.velocity;
}

}  // namespace pfargeo
