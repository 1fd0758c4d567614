#pragma once

#include <stdexcept>
#include <string>

namespace grhd {

/// Base class for every failure the library reports. Nothing downstream of a
/// throw has clamped, floored or otherwise repaired the offending data.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Physically inadmissible input (non-positive density/pressure, state
/// outside the admissible set, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Degenerate or non-SPD metric data.
struct MetricError : Error {
  using Error::Error;
};

/// An iterative solve failed to converge within its iteration cap.
struct SolverError : Error {
  using Error::Error;
};

/// Bad run configuration, mesh file or problem setup.
struct ConfigError : Error {
  using Error::Error;
};

/// Caller violated a documented precondition (e.g. a viscosity coefficient
/// below the required wave-speed bound).
struct ContractError : Error {
  using Error::Error;
};

/// Operation not defined for these inputs (e.g. an ideal-EOS-only bound
/// asked of a user-defined EOS).
struct UnsupportedError : Error {
  using Error::Error;
};

/// A state the scheme guarantees cannot occur was reached; the run aborts.
struct InvariantViolation : Error {
  using Error::Error;
};

}  // namespace grhd
