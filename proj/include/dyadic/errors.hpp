#pragma once

#include <stdexcept>
#include <string>

namespace dyadic {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input outside the domain of an operation (e.g. prime of an all-zero word).
struct DomainError : Error {
    using Error::Error;
};

// A word that cannot be parsed as a block code over {u~, u, u*, u'}.
struct DecodeError : Error {
    using Error::Error;
};

// Request would exceed a configured resource cap (window length, naive scan size).
struct ResourceError : Error {
    using Error::Error;
};

// Spectral iteration did not reach the requested tolerance; carries the
// best enclosure found so callers can still report something certified.
struct ConvergenceError : Error {
    ConvergenceError(const std::string& what, double lower, double upper)
        : Error(what), lower(lower), upper(upper) {}
    double lower;
    double upper;
};

// Raised when the library detects a violation of one of its own invariants.
struct ConsistencyError : Error {
    using Error::Error;
};

} // namespace dyadic
