#pragma once

#include <stdexcept>
#include <string>

namespace pfargeo {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Missing, malformed, or inconsistent product metadata. CLI exit code 2.
class MetadataError : public Error {
public:
    using Error::Error;
};

/// Geometry or solver failure (degenerate model, no intersection,
/// out-of-swath time, non-convergence). CLI exit code 3.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// Cone/sphere/surface intersection does not exist for the requested inputs.
class NoSolutionError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// File or raster I/O failure. CLI exit code 4.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace pfargeo
