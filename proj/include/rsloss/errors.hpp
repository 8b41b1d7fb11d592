#pragma once

#include <stdexcept>
#include <string>

namespace rsloss {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies on or outside the boundary of its (open) domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Multivariate arguments with mismatched lengths.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Rounding, underflow or non-finite values in a numeric routine.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A requested negative moment E[theta^-k] does not exist.
class DivergentMomentError : public Error {
public:
    using Error::Error;
};

/// A quadrature grid leaves too much posterior mass in its outermost panels.
class EdgeMassError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// An estimator needs a moment that was not computed.
class MissingMomentError : public Error {
public:
    using Error::Error;
};

/// The minimum of an expected loss sits on the edge of the search bracket.
class BracketError : public Error {
public:
    using Error::Error;
};

/// Invalid experiment configuration (unknown estimator tag, bad extras).
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace rsloss
