#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mixedspec {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Configuration / input problems. These map to CLI exit code 3.
struct ConfigError : Error {
  using Error::Error;
};

struct InvalidCoefficients : ConfigError {
  using ConfigError::ConfigError;
};

struct ValidationFailed : ConfigError {
  std::vector<std::string> violations;
  explicit ValidationFailed(std::vector<std::string> v);
};

// Numerical failures. These map to CLI exit code 4.
struct NumericalBreakdown : Error {
  using Error::Error;
};

struct QuadratureError : NumericalBreakdown {
  using NumericalBreakdown::NumericalBreakdown;
};

struct CapExceeded : NumericalBreakdown {
  using NumericalBreakdown::NumericalBreakdown;
};

struct AllZero : NumericalBreakdown {
  using NumericalBreakdown::NumericalBreakdown;
};

struct MatchingSingular : NumericalBreakdown {
  using NumericalBreakdown::NumericalBreakdown;
};

struct RegimeMismatch : Error {
  using Error::Error;
};

struct NotDegenerate : Error {
  using Error::Error;
};

// A mode system is rank-deficient and the boundary data has a component
// outside its range: the series solution does not exist. Exit code 2.
struct DegenerateUnsolvable : Error {
  std::vector<int> modes;
  DegenerateUnsolvable(const std::string& msg, std::vector<int> ks);
};

}
