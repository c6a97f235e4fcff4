#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "funsol/geometry.hpp"

namespace funsol {

struct StencilEntry {
  std::size_t node;
  double weight;
};

/// Five-point flux-form stencil of div(c grad x) on a Grid, in symmetric form.
///
/// Each non-Dirichlet row lists its neighbours with geometric weights. Ghost nodes beyond an
/// insulated edge are reflected onto the mirror neighbour and the row is halved, so the
/// assembled matrix is symmetric. Polar rows are multiplied by r. Dividing a row sum by
/// physical_scale() recovers the physical divergence at that node.
class DiffusionStencil {
public:
  explicit DiffusionStencil(const Grid& grid);

  [[nodiscard]] const Grid& grid() const noexcept { return *grid_; }
  [[nodiscard]] std::span<const StencilEntry> row(std::size_t k) const;
  [[nodiscard]] double physical_scale(std::size_t k) const noexcept { return scale_[k]; }

  /// Unknown (non-Dirichlet) nodes in increasing node order.
  [[nodiscard]] const std::vector<std::size_t>& unknowns() const noexcept { return unknowns_; }

private:
  const Grid* grid_;
  std::vector<std::size_t> offsets_;
  std::vector<StencilEntry> entries_;
  std::vector<double> scale_;
  std::vector<std::size_t> unknowns_;
};

/// Coefficient on the face between two neighbouring nodes; must be symmetric in its arguments.
using FaceCoefficient = std::function<double(std::size_t, std::size_t)>;

struct DiffusionSolveOptions {
  double tol = 1e-12;                  // L-infinity bound on the diagonally normalized residual
  double relative_tol = 1e-12;         // CG stop on ||r||_2 / ||b||_2
  std::size_t direct_fallback_limit = 5000;
};

struct DiffusionSolveResult {
  std::vector<double> values;  // full node vector
  double residual = 0.0;       // normalized L-infinity residual actually achieved
  std::size_t iterations = 0;
  bool used_direct = false;
};

/// Solves sum_nb w * c(k,nb) * (x_nb - x_k) = source_k at every non-Dirichlet node k, with x
/// fixed to `boundary` at Dirichlet nodes. Diagonally scaled conjugate gradients with an
/// iteration cap of 50*sqrt(unknowns); sparse direct fallback below the fallback limit.
/// `source` may be empty (zero). Throws NonConvergenceError.
DiffusionSolveResult solve_diffusion(const DiffusionStencil& stencil, const FaceCoefficient& coeff,
                                     std::span<const double> boundary,
                                     std::span<const double> source,
                                     std::span<const double> initial_guess,
                                     const DiffusionSolveOptions& opts);

/// Row sums sum_nb w * c(k,nb) * (x_nb - x_k) for every node (zero at Dirichlet nodes).
std::vector<double> apply_diffusion(const DiffusionStencil& stencil, const FaceCoefficient& coeff,
                                    std::span<const double> x);

}  // namespace funsol
