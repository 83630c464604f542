#ifndef ORBITKIT_ERRORS_HPP
#define ORBITKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace orbitkit {

/// Input violates a documented precondition (shape, invariant, range).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Problem size exceeds a hard implementation limit (e.g. n! enumeration).
class SizeError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Requested method would be pathologically slow; a better one exists.
class EfficiencyError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Computation failed numerically (non-convergence, tolerance violation).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exponent out of double range; message names the shift identity to use.
class OverflowError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace orbitkit

#endif
