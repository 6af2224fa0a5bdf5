#pragma once

#include <stdexcept>
#include <string>

namespace ppm {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or out-of-domain input (bad parameters, empty inputs, wrong sizes).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A well-formed function was evaluated at a singular point.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// Too few samples for a requested summary.
class PrecisionError : public Error {
public:
    using Error::Error;
};

/// Convergence diagnostics could not be computed.
class DiagnosticsError : public Error {
public:
    using Error::Error;
};

}  // namespace ppm
