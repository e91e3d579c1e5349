#pragma once

#include <stdexcept>
#include <string>

namespace qdlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A matrix fails the density-matrix requirements (Hermiticity, unit trace,
// positive semidefiniteness).
struct NotPhysical : Error {
  using Error::Error;
};

struct NotHermitian : Error {
  using Error::Error;
};

// Argument outside its admissible range (channel strength, sweep bounds, ...).
struct DomainError : Error {
  using Error::Error;
};

struct OptimizerFailure : Error {
  using Error::Error;
};

struct GridTooCoarse : Error {
  using Error::Error;
};

}  // namespace qdlab
