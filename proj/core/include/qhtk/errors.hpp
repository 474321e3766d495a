#pragma once

#include <stdexcept>
#include <string>

namespace qhtk {

// Base for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The input is mathematically outside an operation's domain
// (non-square matrix, point on the wrong side of the null cone, ...).
struct DomainError : Error {
    using Error::Error;
};

// An iterative scheme failed to converge or an internal consistency
// check tripped. Never swallowed into a silent result.
struct NumericalError : Error {
    using Error::Error;
};

// Isometry classification refused to decide between parabolic and
// elliptic because the diagonalizability test sits in the gray band.
struct IndeterminateError : DomainError {
    using DomainError::DomainError;
};

// Dilation decomposition asked of a matrix that fixes the origin:
// there is no dilation part. Signalled separately so callers can
// branch on it (the CLI maps it to a dedicated outcome).
struct FixesOriginError : DomainError {
    using DomainError::DomainError;
};

} // namespace qhtk
