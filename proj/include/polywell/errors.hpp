#pragma once

#include <stdexcept>
#include <string>

namespace polywell {

// Construction-time rejection of bad data (NaN/Inf entries, n < 2, ragged rows).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Jacobi sweep cap exceeded; signals pathological input.
struct SvdNonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The zero-point witness construction cannot break the rank-one inequality.
struct NoViolationExists : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MeshError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two fields disagree on the boundary nodes where exact equality is required.
struct BoundaryMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// JSON/CSV input error; the message names the offending field.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace polywell
