// errors.hpp — exception types shared across the library

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace sleraman {

struct NumericsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : NumericsError {
    using NumericsError::NumericsError;
};

struct SingularMatrix : NumericsError {
    using NumericsError::NumericsError;
};

struct NoConvergence : NumericsError {
    using NumericsError::NumericsError;
};

// Resolvent hit an undamped eigenvalue on the evaluation axis.
struct SingularResolvent : NumericsError {
    using NumericsError::NumericsError;
};

struct InvalidRate : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Adaptive quadrature ran out of subdivisions; carries the best estimate and its bound.
struct ToleranceNotMet : NumericsError {
    std::complex<double> estimate;
    double errorBound;
    ToleranceNotMet(const std::string& msg, std::complex<double> est, double bound)
        : NumericsError(msg), estimate(est), errorBound(bound) {}
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace sleraman
