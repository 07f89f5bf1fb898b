#pragma once

#include <stdexcept>
#include <string>

namespace edgelaw {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad arguments: nonpositive radius, contour ordering, unknown family.
struct ParameterError : Error {
  using Error::Error;
};

// Arguments outside the mathematical domain of a formula.
struct DomainError : Error {
  using Error::Error;
};

struct RangeError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

struct ConvergenceError : Error {
  using Error::Error;
};

struct EvaluationError : Error {
  using Error::Error;
};

struct PoleError : Error {
  PoleError(const std::string& what, double at) : Error(what), location(at) {}
  double location;
};

}  // namespace edgelaw
