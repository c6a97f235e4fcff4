#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "funsol/geometry.hpp"
#include "funsol/problem.hpp"
#include "funsol/reconstruct.hpp"
#include "funsol/twopoint.hpp"

namespace funsol {

struct ResidualReport {
  std::vector<std::string> equations;  // "u1".."un", then "p" in the pressure modes
  std::vector<double> per_equation_linf;
  std::vector<double> per_equation_l2;  // root mean square over the same nodes
  double boundary_max_error = 0.0;
  std::array<double, 2> grid_spacing{0.0, 0.0};
};

/// Flux-form residual of every conservation law at the non-Dirichlet nodes, with face
/// coefficients taken as the arithmetic mean of the two node values. Insulated edges use ghost
/// reflection; polar grids carry the metric factors. Throws ShapeMismatchError.
ResidualReport divergence_residual(const FieldSet& fields, const ProblemSpec& spec, const Grid& grid);

/// max_z |theta_i(z) - gamma_i z| with theta_i(z) = int_0^z sum_j a_ij(U) U_j' dt.
std::vector<double> theta_linearity(const ProfileSolution& sol, const ProblemSpec& spec);

struct DirectSolveOptions {
  double tol = 1e-11;
  std::size_t max_outer = 300;
};

struct DirectSolveResult {
  FieldSet fields;
  std::size_t outer_iterations = 0;
  double last_update = 0.0;
};

/// Frozen-coefficient Picard iteration on the full PDE system. Each sweep solves the pressure
/// equation first (darcy and scalar modes), then every u_i with a_ii as diffusion coefficient and
/// the remaining terms moved to the right side. Face coefficients average the node coefficient
/// along the straight segment between the two node states. Throws NonConvergenceError (also
/// when the update grows for 5 consecutive sweeps).
DirectSolveResult direct_coupled_solve(const ProblemSpec& spec, std::shared_ptr<const Grid> grid,
                                       const DirectSolveOptions& opts = {});

struct FieldDifference {
  double linf = 0.0;
  double l2 = 0.0;  // root mean square over all compared values
};

/// Node-wise difference over all u fields and the pressure. Throws ShapeMismatchError.
FieldDifference compare_fields(const FieldSet& a, const FieldSet& b);

}  // namespace funsol
