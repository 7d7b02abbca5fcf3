#pragma once

#include <vector>

#include "pfargeo/geodesy.hpp"
#include "pfargeo/vec3.hpp"

namespace pfargeo {

/// Time-tagged ECEF platform state. Times are collection-relative seconds.
struct StateVector {
    double time = 0.0;
    EcefPoint position;
    Vec3 velocity;
};

/// Ordered ephemeris with strictly increasing times; at least two samples.
/// Interpolation is cubic Hermite per bracketing interval, using both the
/// position and velocity samples, so positions and velocities are exact at
/// the nodes and C1-continuous across interval boundaries. No extrapolation.
class Orbit {
public:
    explicit Orbit(std::vector<StateVector> states);

    const std::vector<StateVector>& states() const { return states_; }
    double start_time() const { return states_.front().time; }
    double end_time() const { return states_.back().time; }
    bool covers(double t) const { return t >= start_time() && t <= end_time(); }

    /// Interpolated state at t. Throws GeometryError outside the orbit span.
    StateVector state_at(double t) const;

    /// Interpolated acceleration (second derivative of the Hermite cubic).
    Vec3 acceleration_at(double t) const;

private:
    std::size_t interval_index(double t) const;

    std::vector<StateVector> states_;
};

/// Free-function spelling of Orbit::state_at.
inline StateVector orbit_state_at(const Orbit& orbit, double t) { return orbit.state_at(t); }

}  // namespace pfargeo
