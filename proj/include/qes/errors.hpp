#pragma once

#include <stdexcept>
#include <string>

namespace qes {

/// Argument outside the domain of a primitive (log of a non-positive number,
/// real power of a negative base, rho <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Evaluation at a pole of coth/cosech or at coincident particles.
class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// k <= 1/2: no D_k^+ bound-state representation.
class RepresentationError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A parameter bundle that is structurally invalid (m != k for a
/// wavefunction, r outside [1, N-1], ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A function returned a non-finite value where a finite one was required.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Convention calibration could not find a convention that passes.
class CalibrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The convergence classifier and the numerical integrator disagree.
class InconsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qes
