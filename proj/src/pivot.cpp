#include "funsol/pivot.hpp"

#include <algorithm>
#include <cmath>

#include "funsol/diffusion.hpp"
#include "funsol/error.hpp"

namespace funsol {

PivotField solve_pivot(const Grid& grid, double tol, std::span<const double> initial_guess) {
  if (!(tol > 0.0)) throw ConfigError("pivot tolerance must be positive");
  auto shared = std::make_shared<const Grid>(grid);
  const DiffusionStencil stencil(*shared);

  std::vector<double> boundary(grid.size(), 0.0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid.tag(k) == NodeTag::gamma3) boundary[k] = 1.0;
  }
  DiffusionSolveOptions opts;
  opts.tol = tol;
  const auto unit = [](std::size_t, std::size_t) { return 1.0; };
  auto solved = solve_diffusion(stencil, unit, boundary, {}, initial_guess, opts);

  // The M-matrix keeps the exact discrete solution in [0,1]; clip iteration round-off.
  for (double& v : solved.values) v = std::clamp(v, 0.0, 1.0);

  PivotField field;
  field.grid = std::move(shared);
  field.values = std::move(solved.values);
  field.iterations = solved.iterations;
  field.achieved_residual = pivot_residual(field);
  return field;
}

double pivot_residual(const PivotField& field) {
  const Grid& g = *field.grid;
  const auto& z = field.values;
  const bool polar = g.coord_system() == CoordSystem::polar;
  const double h1 = g.h1(), h2 = g.h2();
  double worst = 0.0;

  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.is_dirichlet(k)) continue;
    const std::size_t i = g.i_of(k), j = g.j_of(k);
    const double zc = z[k];
    const double zw = z[g.index(i - 1, j)];
    const double ze = z[g.index(i + 1, j)];
    // Ghost value across an insulated edge mirrors the interior neighbour.
    const double zs = j > 0 ? z[g.index(i, j - 1)] : z[g.index(i, j + 1)];
    const double zn = j + 1 < g.n2() ? z[g.index(i, j + 1)] : z[g.index(i, j - 1)];

    double lap = 0.0, diag = 0.0;
    if (polar) {
      const double r = g.axis1(i);
      // z_rr + z_r / r + z_tt / r^2
      lap = (ze - 2.0 * zc + zw) / (h1 * h1) + (ze - zw) / (2.0 * h1 * r) +
            (zn - 2.0 * zc + zs) / (r * r * h2 * h2);
      diag = 2.0 / (h1 * h1) + 2.0 / (r * r * h2 * h2);
    } else {
      lap = (ze - 2.0 * zc + zw) / (h1 * h1) + (zn - 2.0 * zc + zs) / (h2 * h2);
      diag = 2.0 / (h1 * h1) + 2.0 / (h2 * h2);
    }
    worst = std::max(worst, std::abs(lap) / diag);
  }
  return worst;
}

}  // namespace funsol
