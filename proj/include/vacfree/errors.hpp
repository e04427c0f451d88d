#pragma once

#include <stdexcept>
#include <string>

namespace vacfree {

// Base for every failure raised by the library. The CLI maps these to exit code 1
// (verification/numerics) or 2 (ConfigError).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Image of an operator left the truncation window while running in strict mode.
class BoundaryError : public Error {
 public:
  using Error::Error;
};

// A structural precondition on coefficients failed: a zero coefficient,
// alpha_k != beta_{1-k}, or alpha_1 != beta_0 when building R.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

// Series in |z| diverges (label outside the disk) or did not converge within the term cap.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// Node doubling disagreed: the grid does not resolve the integrand.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace vacfree
