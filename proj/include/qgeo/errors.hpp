#pragma once

#include <stdexcept>
#include <string>

namespace qgeo {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

// Element with no inverse under the deformed addition.
struct SingularElement : Error {
  using Error::Error;
};

// Iterative solver exhausted its budget above tolerance.
struct ConvergenceFailure : Error {
  using Error::Error;
};

// Enumeration exceeded the configured element budget.
struct ResourceLimit : Error {
  using Error::Error;
};

// Log-log growth fit residual indicates non-polynomial growth.
struct FitRejected : Error {
  using Error::Error;
};

// Constraint targets outside the attainable range.
struct Infeasible : Error {
  using Error::Error;
};

}  // namespace qgeo
