#pragma once

#include <stdexcept>
#include <string>

namespace repalign {

/// Base of every error raised by the library. Subclasses split into two
/// families: `PreconditionError` (the caller passed something malformed) and
/// the domain errors (the inputs were well-formed but the math refused).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class DimensionError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class DomainMismatchError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class FormatError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class SingularMatrixError : public Error {
public:
    using Error::Error;
};

class GenerationFailedError : public Error {
public:
    using Error::Error;
};

class InfeasibleStrategyError : public Error {
public:
    using Error::Error;
};

class InconsistentContentsError : public Error {
public:
    using Error::Error;
};

class BudgetExceededError : public Error {
public:
    using Error::Error;
};

class NoFeasibleSolutionError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace repalign
