#pragma once

#include <stdexcept>
#include <string>

namespace homoclinic {

/// Malformed or out-of-range input (bad dimension, asymmetric matrix,
/// parameter outside its admissible set).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A mathematical precondition of an operation does not hold for otherwise
/// well-formed input, e.g. a majorization that fails or a matrix that is not
/// positive definite.
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised by spd_sqrt when the input has a non-positive eigenvalue.
class NotPositiveDefinite : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// An iterative procedure (scattering limit, eps-halving) ran out of budget.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace homoclinic
