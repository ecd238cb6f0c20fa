#pragma once

#include <stdexcept>
#include <string>

namespace heis {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Radix or modulus below 2.
class InvalidRadixError : public Error {
public:
    using Error::Error;
};

// Operands with mismatched ring parameters (modulus, radix, dimension).
class IncompatibleOperandsError : public Error {
public:
    using Error::Error;
};

// Integer sequence whose tail has not stabilized at the requested precision.
class NotCauchyError : public Error {
public:
    using Error::Error;
};

// Level tower that fails the coherence relation where coherence is required.
class NotCoherentError : public Error {
public:
    using Error::Error;
};

// Requested enumeration exceeds the configured size cap.
class TooLargeError : public Error {
public:
    using Error::Error;
};

// Member set that is not a subgroup (or not contained in the claimed parent).
class InvalidSubgroupError : public Error {
public:
    using Error::Error;
};

// Level index outside the stored depth range, or incompatible depths.
class LevelError : public Error {
public:
    using Error::Error;
};

// Quotient computation requested at a depth too shallow to resolve it.
class InsufficientResolutionError : public Error {
public:
    using Error::Error;
};

// Path optimizer could not meet the endpoint tolerance; carries the best
// endpoint error it reached.
class NoFeasiblePathError : public Error {
public:
    NoFeasiblePathError(const std::string& what, double best_endpoint_error)
        : Error(what), best_endpoint_error_(best_endpoint_error) {}

    double best_endpoint_error() const { return best_endpoint_error_; }

private:
    double best_endpoint_error_;
};

} // namespace heis
