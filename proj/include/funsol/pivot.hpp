#pragma once

#include <memory>
#include <span>
#include <vector>

#include "funsol/geometry.hpp"

namespace funsol {

/// Discrete harmonic field z with z = 0 on gamma1, dz/dn = 0 on gamma2, z = 1 on gamma3.
struct PivotField {
  std::shared_ptr<const Grid> grid;
  std::vector<double> values;
  double achieved_residual = 0.0;  // normalized L-infinity residual reported by the solver
  std::size_t iterations = 0;
};

/// Solves the mixed Laplace problem with the five-point stencil (polar metric terms on an
/// annulus, ghost reflection on insulated edges). The returned field has normalized residual
/// <= tol, exact Dirichlet values and all values in [0,1].
/// `initial_guess` is optional (empty means zero). Throws NonConvergenceError.
PivotField solve_pivot(const Grid& grid, double tol, std::span<const double> initial_guess = {});

/// L-infinity norm, over non-Dirichlet nodes, of the five-point residual divided by its
/// diagonal coefficient. Evaluated straight from the stencil formula, not from the solver's
/// assembled system.
double pivot_residual(const PivotField& field);

}  // namespace funsol
