#pragma once

#include <stdexcept>
#include <string>

namespace pmdyn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad or inconsistent configuration input (CLI exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

// Parameters outside the validity domain of the solution (CLI exit code 3).
struct PhysicsError : Error {
  using Error::Error;
};

struct InvalidAnisotropy : PhysicsError {
  using PhysicsError::PhysicsError;
};
struct DegenerateSpectrum : PhysicsError {
  using PhysicsError::PhysicsError;
};
struct NoCriticalPoint : PhysicsError {
  using PhysicsError::PhysicsError;
};
struct InvalidBathParams : PhysicsError {
  using PhysicsError::PhysicsError;
};
struct NonPositiveFrequency : PhysicsError {
  using PhysicsError::PhysicsError;
};
struct ZeroFrequency : PhysicsError {
  using PhysicsError::PhysicsError;
};
struct NegativeCoefficient : PhysicsError {
  using PhysicsError::PhysicsError;
};
struct RateDegeneracy : PhysicsError {
  using PhysicsError::PhysicsError;
};
struct ZeroRates : PhysicsError {
  using PhysicsError::PhysicsError;
};
struct BasisMismatch : PhysicsError {
  using PhysicsError::PhysicsError;
};
struct NotXShaped : PhysicsError {
  using PhysicsError::PhysicsError;
};
struct NotDensityMatrix : PhysicsError {
  using PhysicsError::PhysicsError;
};

// Step-halving integrator failed to reach its tolerance.
struct NonConvergence : Error {
  using Error::Error;
};

}  // namespace pmdyn
