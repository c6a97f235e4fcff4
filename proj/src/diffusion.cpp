#include "funsol/diffusion.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "funsol/error.hpp"

namespace funsol {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

DiffusionStencil::DiffusionStencil(const Grid& grid) : grid_(&grid) {
  const std::size_t n2 = grid.n2();
  const bool polar = grid.coord_system() == CoordSystem::polar;
  const double h1 = grid.h1(), h2 = grid.h2();

  offsets_.assign(grid.size() + 1, 0);
  scale_.assign(grid.size(), 1.0);
  entries_.reserve(4 * grid.size());

  for (std::size_t k = 0; k < grid.size(); ++k) {
    offsets_[k] = entries_.size();
    if (grid.is_dirichlet(k)) continue;
    unknowns_.push_back(k);

    const std::size_t i = grid.i_of(k), j = grid.j_of(k);
    const double r = polar ? grid.axis1(i) : 1.0;
    const double w_minus1 = polar ? (r - 0.5 * h1) / (h1 * h1) : 1.0 / (h1 * h1);
    const double w_plus1 = polar ? (r + 0.5 * h1) / (h1 * h1) : 1.0 / (h1 * h1);
    const double w2 = polar ? 1.0 / (r * h2 * h2) : 1.0 / (h2 * h2);

    // Axis-1 neighbours always exist: the axis-1 ends are Dirichlet.
    std::array<StencilEntry, 4> local{};
    std::size_t count = 0;
    double row_factor = 1.0;
    local[count++] = {grid.index(i - 1, j), w_minus1};
    local[count++] = {grid.index(i + 1, j), w_plus1};

    const std::size_t down = j > 0 ? grid.index(i, j - 1) : kNone;
    const std::size_t up = j + 1 < n2 ? grid.index(i, j + 1) : kNone;
    if (down != kNone && up != kNone) {
      local[count++] = {down, w2};
      local[count++] = {up, w2};
    } else {
      // Ghost reflection across an insulated edge, then halve the row for symmetry.
      local[count++] = {down != kNone ? down : up, 2.0 * w2};
      row_factor = 0.5;
    }
    for (std::size_t e = 0; e < count; ++e) {
      entries_.push_back({local[e].node, row_factor * local[e].weight});
    }
    scale_[k] = row_factor * r;
  }
  offsets_[grid.size()] = entries_.size();
}

std::span<const StencilEntry> DiffusionStencil::row(std::size_t k) const {
  return {entries_.data() + offsets_[k], offsets_[k + 1] - offsets_[k]};
}

std::vector<double> apply_diffusion(const DiffusionStencil& stencil, const FaceCoefficient& coeff,
                                    std::span<const double> x) {
  std::vector<double> out(x.size(), 0.0);
  for (const std::size_t k : stencil.unknowns()) {
    double s = 0.0;
    for (const auto& e : stencil.row(k)) s += e.weight * coeff(k, e.node) * (x[e.node] - x[k]);
    out[k] = s;
  }
  return out;
}

DiffusionSolveResult solve_diffusion(const DiffusionStencil& stencil, const FaceCoefficient& coeff,
                                     std::span<const double> boundary,
                                     std::span<const double> source,
                                     std::span<const double> initial_guess,
                                     const DiffusionSolveOptions& opts) {
  const Grid& grid = stencil.grid();
  const auto& unknowns = stencil.unknowns();
  const std::size_t n = unknowns.size();

  std::vector<std::size_t> slot(grid.size(), kNone);
  for (std::size_t u = 0; u < n; ++u) slot[unknowns[u]] = u;

  // K y = b with K_kk = sum w c, K_k,nb = -w c, b_k = -source_k + sum_{nb Dirichlet} w c x_nb.
  using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(5 * n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  Eigen::VectorXd diag(static_cast<Eigen::Index>(n));
  for (std::size_t u = 0; u < n; ++u) {
    const std::size_t k = unknowns[u];
    double d = 0.0;
    double rhs = source.empty() ? 0.0 : -source[k];
    for (const auto& e : stencil.row(k)) {
      const double w = e.weight * coeff(k, e.node);
      d += w;
      if (slot[e.node] == kNone) {
        rhs += w * boundary[e.node];
      } else {
        triplets.emplace_back(static_cast<int>(u), static_cast<int>(slot[e.node]), -w);
      }
    }
    if (!(d > 0.0)) throw SingularMatrixError("diffusion row with non-positive diagonal");
    triplets.emplace_back(static_cast<int>(u), static_cast<int>(u), d);
    diag[static_cast<Eigen::Index>(u)] = d;
    b[static_cast<Eigen::Index>(u)] = rhs;
  }
  SpMat K(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  K.setFromTriplets(triplets.begin(), triplets.end());

  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  for (std::size_t u = 0; u < n; ++u) {
    y[static_cast<Eigen::Index>(u)] = initial_guess.empty() ? 0.0 : initial_guess[unknowns[u]];
  }

  auto normalized_inf = [&](const Eigen::VectorXd& r) {
    return n == 0 ? 0.0 : r.cwiseQuotient(diag).cwiseAbs().maxCoeff();
  };

  const double bnorm = b.norm();
  const auto cap = static_cast<std::size_t>(50.0 * std::sqrt(static_cast<double>(n)));
  const Eigen::VectorXd inv_diag = diag.cwiseInverse();

  DiffusionSolveResult result;
  Eigen::VectorXd r = b - K * y;
  double achieved = normalized_inf(r);
  std::size_t it = 0;
  bool done = achieved <= opts.tol && r.norm() <= opts.relative_tol * bnorm;

  while (!done && it < cap) {
    const std::size_t pass_start = it;
    // Restartable preconditioned CG: each pass starts from the true residual.
    Eigen::VectorXd zv = inv_diag.cwiseProduct(r);
    Eigen::VectorXd p = zv;
    double rz = r.dot(zv);
    while (it < cap) {
      const Eigen::VectorXd Kp = K * p;
      const double pKp = p.dot(Kp);
      if (!(pKp > 0.0)) break;
      const double alpha = rz / pKp;
      y += alpha * p;
      r -= alpha * Kp;
      ++it;
      if (r.norm() <= opts.relative_tol * bnorm && normalized_inf(r) <= opts.tol) break;
      zv = inv_diag.cwiseProduct(r);
      const double rz_next = r.dot(zv);
      p = zv + (rz_next / rz) * p;
      rz = rz_next;
    }
    r = b - K * y;
    achieved = normalized_inf(r);
    done = achieved <= opts.tol;
    if (done || bnorm == 0.0 || it == pass_start) break;
  }
  result.iterations = it;

  if (!done && n < opts.direct_fallback_limit) {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    ldlt.compute(Eigen::SparseMatrix<double>(K));
    if (ldlt.info() == Eigen::Success) {
      y = ldlt.solve(b);
      r = b - K * y;
      achieved = normalized_inf(r);
      done = achieved <= opts.tol;
      result.used_direct = true;
    }
  }
  if (!done) {
    throw NonConvergenceError("diffusion solve did not reach tolerance within " +
                                  std::to_string(cap) + " iterations",
                              achieved);
  }

  result.values.assign(boundary.begin(), boundary.end());
  for (std::size_t u = 0; u < n; ++u) result.values[unknowns[u]] = y[static_cast<Eigen::Index>(u)];
  result.residual = achieved;
  return result;
}

}  // namespace funsol
