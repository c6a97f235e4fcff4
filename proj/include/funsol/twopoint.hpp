#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

#include "funsol/problem.hpp"

namespace funsol {

/// Sampled profiles U_i on a uniform mesh of the pivot interval.
struct Profiles {
  std::vector<double> mesh;
  std::vector<std::vector<double>> values;  // values[i][k] = U_i(mesh[k])
};

/// One fixed-point sweep, recorded for the a-priori bound sup|T[U]| <= (M/m)|u*|.
struct FixedPointStep {
  double update_norm = 0.0;  // sup-norm change of the iterate
  double sup_t = 0.0;        // sup_z |T[U](z)| (Euclidean in components)
  double bound = 0.0;        // (M/m) |u*| with m, M sampled on the input iterate's box
  double m = 0.0;
  double big_m = 0.0;
  double damping = 1.0;
};

struct ProfileSolution {
  Profiles profiles;
  std::vector<double> gamma;
  double two_point_residual = 0.0;  // max collocation residual at interior midpoints
  double boundary_error = 0.0;      // max_i |U_i(p*) - u_i*|
  std::size_t iterations = 0;

  std::vector<FixedPointStep> fixed_point_history;
  double jacobian_condition = 0.0;                 // shooting: scaled condition at the solution
  std::vector<std::array<double, 2>> scalar_samples;  // scalar: (gamma, U(p*; gamma)) pairs
};

struct EllipticityBounds {
  double m = 0.0;
  double big_m = 0.0;
};

/// Per-variable closed ranges for u1..un, p (n + 1 entries).
using SampleBox = std::vector<std::array<double, 2>>;

/// Extreme eigenvalues of (A + A^T)/2 over a lattice with `samples` points per non-degenerate
/// axis. Throws NonEllipticError if the sampled minimum is <= 0.
EllipticityBounds ellipticity_bounds(const ProblemSpec& spec, const SampleBox& box,
                                     std::size_t samples);

/// gamma[U] = (int_0^1 A^{-1}(U(t)) dt)^{-1} u*. Molecular mode; odd mesh size.
std::vector<double> gamma_functional(const Profiles& u, const ProblemSpec& spec);

/// T[U](z) = (int_0^z A^{-1}(U)) (int_0^1 A^{-1}(U))^{-1} u*, with T(0) = 0 and T(1) = u*
/// set exactly. Throws SingularMatrixError when A or the averaged matrix is singular.
Profiles apply_fixed_point_operator(const Profiles& u, const ProblemSpec& spec);

struct FixedPointOptions {
  std::size_t n_nodes = 1001;
  double tol = 1e-10;
  std::size_t max_iter = 500;
  double damping = 1.0;
  std::size_t box_samples = 5;
};

/// Damped Picard iteration U <- (1-w) U + w T[U] from U0(z) = z u*. The damping is halved
/// (not below 1/16) whenever the update norm grows. Throws NonConvergenceError.
ProfileSolution solve_fixed_point(const ProblemSpec& spec, const FixedPointOptions& opts = {});

/// Classical RK4 for U' = A^{-1}(gamma b_{n+1} - b), U(0) = 0, on n_nodes uniform nodes over
/// [0, p*]. Throws SingularMatrixError (naming p) if A degenerates along the trajectory.
Profiles integrate_profiles(const ProblemSpec& spec, const std::vector<double>& gamma,
                            std::size_t n_nodes);

struct ShootingOptions {
  std::size_t n_nodes = 1001;
  double tol = 1e-10;
  std::size_t max_newton = 50;
  double singular_condition = 1e8;
};

/// Forward-difference Jacobian of the shooting map S(gamma) = U(p*; gamma) - u*, with step
/// 1e-6 (1 + |gamma_j|).
Eigen::MatrixXd shooting_jacobian(const ProblemSpec& spec, const std::vector<double>& gamma,
                                  std::size_t n_nodes);

/// Initial gamma from the constant-coefficient linearization at the origin,
/// gamma0 = (A0 u*/p* + b0) / b_{n+1}(0). Throws DegenerateLinearizationError if det A0 = 0.
std::vector<double> linearized_gamma(const ProblemSpec& spec);

/// Newton on the shooting map. The Jacobian is checked at every iterate including the last;
/// a condition estimate above opts.singular_condition raises SingularJacobianError.
ProfileSolution solve_shooting(const ProblemSpec& spec, const ShootingOptions& opts = {});

/// Integrals over [0, p*] of a lower bound r(p) and an upper bound q(p) of F.
struct ScalarBracketHints {
  double r_integral = 0.0;
  double q_integral = 0.0;
};

struct ScalarOptions {
  std::size_t n_nodes = 1001;
  double tol = 1e-12;
  std::size_t max_expansions = 60;
  std::size_t check_samples = 33;
};

/// Bisection on gamma for dU/dp = gamma F(U,p), F = b_{n+1}/a_11, using monotonicity of
/// gamma -> U(p*; gamma). Throws NonPositiveError or BracketFailureError.
ProfileSolution solve_scalar(const ProblemSpec& spec,
                             const std::optional<ScalarBracketHints>& hints = std::nullopt,
                             const ScalarOptions& opts = {});

/// max over interior midpoints and components of |A U' + b - gamma b_{n+1}|, with U and U'
/// at the midpoint from the four surrounding nodes (fourth order).
double collocation_residual(const Profiles& u, const std::vector<double>& gamma,
                            const ProblemSpec& spec);

}  // namespace funsol
