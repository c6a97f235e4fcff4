#pragma once

#include <stdexcept>
#include <string>

namespace funsol {

/// Coarse failure class; the CLI maps each one to its own exit status.
enum class ErrorCategory {
  config,        // bad input: configuration, expressions, geometry arguments
  solver,        // a numerical method failed to produce an answer
  resonance,     // the two-point problem lost uniqueness (singular shooting map)
  verification,  // computed fields failed an independent check
};

class Error : public std::runtime_error {
public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  [[nodiscard]] ErrorCategory category() const noexcept { return category_; }

private:
  ErrorCategory category_;
};

// geometry

class DimensionTooSmallError : public Error {
public:
  explicit DimensionTooSmallError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

class InvalidExtentError : public Error {
public:
  explicit InvalidExtentError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

// expression language

/// Positions are 1-based character columns in the source text.
class ExpressionError : public Error {
public:
  ExpressionError(const std::string& what, std::size_t position)
      : Error(ErrorCategory::config, what + " at position " + std::to_string(position)),
        detail_(what), position_(position) {}

  [[nodiscard]] std::size_t position() const noexcept { return position_; }
  /// Message without the position suffix.
  [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

private:
  std::string detail_;
  std::size_t position_;
};

class SyntaxError : public ExpressionError {
public:
  using ExpressionError::ExpressionError;
};

class UnknownVariableError : public ExpressionError {
public:
  using ExpressionError::ExpressionError;
};

class UnknownFunctionError : public ExpressionError {
public:
  using ExpressionError::ExpressionError;
};

/// log of a non-positive number, sqrt of a negative one, division by zero, non-finite result.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(ErrorCategory::solver, what) {}
};

// solvers

class NonConvergenceError : public Error {
public:
  NonConvergenceError(const std::string& what, double last_norm)
      : Error(ErrorCategory::solver, what), last_norm_(last_norm) {}

  [[nodiscard]] double last_norm() const noexcept { return last_norm_; }

private:
  double last_norm_;
};

class SingularMatrixError : public Error {
public:
  explicit SingularMatrixError(const std::string& what) : Error(ErrorCategory::solver, what) {}
};

class NonEllipticError : public Error {
public:
  NonEllipticError(const std::string& what, double m)
      : Error(ErrorCategory::solver, what), m_(m) {}

  [[nodiscard]] double lower_bound() const noexcept { return m_; }

private:
  double m_;
};

/// det A(0) == 0: the constant-coefficient linearization at the origin has no unique solution.
class DegenerateLinearizationError : public Error {
public:
  explicit DegenerateLinearizationError(const std::string& what)
      : Error(ErrorCategory::solver, what) {}
};

/// The shooting-map Jacobian is numerically singular; carries its condition estimate.
class SingularJacobianError : public Error {
public:
  SingularJacobianError(const std::string& what, double condition)
      : Error(ErrorCategory::resonance, what), condition_(condition) {}

  [[nodiscard]] double condition() const noexcept { return condition_; }

private:
  double condition_;
};

class BracketFailureError : public Error {
public:
  explicit BracketFailureError(const std::string& what) : Error(ErrorCategory::solver, what) {}
};

/// A quantity required to be strictly positive (scalar right side F, Kirchhoff weight) was not.
class NonPositiveError : public Error {
public:
  explicit NonPositiveError(const std::string& what) : Error(ErrorCategory::solver, what) {}
};

class RangeError : public Error {
public:
  explicit RangeError(const std::string& what) : Error(ErrorCategory::solver, what) {}
};

class ShapeMismatchError : public Error {
public:
  explicit ShapeMismatchError(const std::string& what) : Error(ErrorCategory::verification, what) {}
};

class UnknownOracleError : public Error {
public:
  explicit UnknownOracleError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

}  // namespace funsol
