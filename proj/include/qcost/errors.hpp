#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

// Exception taxonomy.  Each class maps onto one failure surface of the
// library so callers (in particular the CLI) can translate outcomes into
// distinct exit codes without string matching:
//
//   ConfigError              -> bad user input (unknown key, malformed file)
//   ConstraintError          -> physically impossible request (e.g. a field
//                               profile that would need an imaginary B)
//   QuadratureError/OdeError -> numerical machinery failed to converge

namespace qcost {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration / input-validation failure.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

/// A requested protocol violates a physical realizability constraint.
class ConstraintError : public Error {
 public:
  ConstraintError(const std::string& what, double where) : Error(what), where_(where) {}

  /// Dimensionless protocol time s in [0,1] at which the constraint broke.
  double where() const noexcept { return where_; }

 private:
  double where_;
};

/// Adaptive quadrature failed to reach the requested tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double partial, double error_estimate,
                  std::size_t evaluations)
      : Error(what), partial_(partial), error_estimate_(error_estimate), evaluations_(evaluations) {}

  double partial_value() const noexcept { return partial_; }
  double error_estimate() const noexcept { return error_estimate_; }
  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  double partial_;
  double error_estimate_;
  std::size_t evaluations_;
};

/// ODE integration produced a non-finite state.
class OdeError : public Error {
 public:
  OdeError(const std::string& what, double t) : Error(what), t_(t) {}

  /// Time at which the state first became non-finite.
  double time() const noexcept { return t_; }

 private:
  double t_;
};

}  // namespace qcost
