#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qwalk {

/// Base class for all qwalk errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user-supplied parameters (non-unitary coin, probabilities out of
/// range, malformed config values, ...).
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

/// An amplitude would be shifted off the allocated lattice.  Carries the
/// offending absolute site index.
class LatticeOverflowError : public Error {
public:
    LatticeOverflowError(std::int64_t site, const std::string& what)
        : Error(what), site_(site) {}

    std::int64_t site() const { return site_; }

private:
    std::int64_t site_;
};

/// Norm or trace drifted beyond tolerance, or another internal numeric
/// consistency check failed.
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace qwalk
