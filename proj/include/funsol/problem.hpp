#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "funsol/expr.hpp"

namespace funsol {

/// molecular: A(U) U' = gamma on z in [0,1] (no pressure).
/// darcy:     sum_j a_ij U_j' + b_i = gamma_i b_{n+1} on p in [0, p*].
/// scalar:    dU/dp = gamma F(U,p) with F = b_{n+1} / a_11, n = 1.
enum class Mode { molecular, darcy, scalar };

const char* to_string(Mode m);
Mode mode_from_string(const std::string& s);

/// Coefficient functions and boundary targets of a divergence-form system.
///
/// Expressions are over the variables u1..un, p (in that order). Absent b means zero,
/// absent b_{n+1} means the constant 1. Validated on construction.
class ProblemSpec {
public:
  ProblemSpec(Mode mode, std::size_t n, std::vector<std::string> a, std::vector<std::string> b,
              std::optional<std::string> b_next, std::vector<double> u_star, double p_star);

  [[nodiscard]] Mode mode() const noexcept { return mode_; }
  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] const std::vector<double>& u_star() const noexcept { return u_star_; }
  [[nodiscard]] double p_star() const noexcept { return p_star_; }
  [[nodiscard]] bool has_b() const noexcept { return !b_.empty(); }
  [[nodiscard]] bool has_b_next() const noexcept { return b_next_.has_value(); }

  [[nodiscard]] const expr::Expr& a(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  [[nodiscard]] const expr::Expr& b(std::size_t i) const { return b_.at(i); }
  [[nodiscard]] const std::optional<expr::Expr>& b_next_expr() const noexcept { return b_next_; }

  /// Variable names u1..un, p.
  [[nodiscard]] const std::vector<std::string>& variables() const noexcept { return vars_; }

  [[nodiscard]] Eigen::MatrixXd matrix_a(std::span<const double> u, double p) const;
  [[nodiscard]] Eigen::VectorXd vector_b(std::span<const double> u, double p) const;
  [[nodiscard]] double b_next(std::span<const double> u, double p) const;

  /// Right side of the profile ODE, A^{-1} (gamma b_{n+1} - b). Throws SingularMatrixError.
  [[nodiscard]] Eigen::VectorXd profile_slope(std::span<const double> u, double p,
                                              std::span<const double> gamma) const;

  /// Copy with different boundary targets. Throws ConfigError on invalid values.
  [[nodiscard]] ProblemSpec with_targets(std::vector<double> u_star, double p_star) const;

  /// The u* vector as an Eigen vector.
  [[nodiscard]] Eigen::VectorXd target() const;

private:
  [[nodiscard]] std::vector<double> pack(std::span<const double> u, double p) const;

  Mode mode_;
  std::size_t n_;
  std::vector<std::string> vars_;
  std::vector<expr::Expr> a_;
  std::vector<expr::Expr> b_;
  std::optional<expr::Expr> b_next_;
  std::vector<double> u_star_;
  double p_star_;
};

/// ||M||_1 * ||M^{-1}||_1; +inf when M is exactly singular.
double condition_estimate(const Eigen::MatrixXd& m);

}  // namespace funsol
