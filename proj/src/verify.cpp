#include "funsol/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "funsol/diffusion.hpp"
#include "funsol/error.hpp"
#include "funsol/numerics.hpp"
#include "funsol/pivot.hpp"

namespace funsol {

namespace {

struct Neighbour {
  std::size_t node;
  double weight;
};

// Physical five-point weights of the Laplacian at a non-Dirichlet node; ghost nodes beyond an
// insulated edge are replaced by their mirror image.
std::vector<Neighbour> physical_neighbours(const Grid& g, std::size_t k) {
  const std::size_t i = g.i_of(k), j = g.j_of(k);
  const double h1 = g.h1(), h2 = g.h2();
  double w_lo = 1.0 / (h1 * h1), w_hi = w_lo, w_th = 1.0 / (h2 * h2);
  if (g.coord_system() == CoordSystem::polar) {
    const double r = g.axis1(i);
    w_lo = (r - 0.5 * h1) / (r * h1 * h1);
    w_hi = (r + 0.5 * h1) / (r * h1 * h1);
    w_th = 1.0 / (r * r * h2 * h2);
  }
  const std::size_t down = j > 0 ? g.index(i, j - 1) : g.index(i, j + 1);
  const std::size_t up = j + 1 < g.n2() ? g.index(i, j + 1) : g.index(i, j - 1);
  return {{g.index(i - 1, j), w_lo}, {g.index(i + 1, j), w_hi}, {down, w_th}, {up, w_th}};
}

// Node coefficients packed as [A row-major, b, b_next].
std::vector<double> coefficients_at(const ProblemSpec& spec, std::span<const double> u, double p) {
  const std::size_t n = spec.n();
  std::vector<double> c(n * n + n + 1);
  const Eigen::MatrixXd a = spec.matrix_a(u, p);
  const Eigen::VectorXd b = spec.vector_b(u, p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      c[i * n + j] = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    c[n * n + i] = b[static_cast<Eigen::Index>(i)];
  }
  c[n * n + n] = spec.b_next(u, p);
  return c;
}

std::vector<double> state_of(const std::vector<std::vector<double>>& u, const std::vector<double>* p,
                             std::size_t k) {
  std::vector<double> s(u.size() + 1, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) s[i] = u[i][k];
  if (p) s.back() = (*p)[k];
  return s;
}

}  // namespace

ResidualReport divergence_residual(const FieldSet& fields, const ProblemSpec& spec, const Grid& grid) {
  const std::size_t n = spec.n();
  const bool pressure = spec.mode() != Mode::molecular;
  if (fields.u_fields.size() != n || pressure != fields.p_field.has_value()) {
    throw ShapeMismatchError("field set does not match the problem's unknowns");
  }
  for (const auto& u : fields.u_fields) {
    if (u.size() != grid.size()) throw ShapeMismatchError("field length differs from the grid size");
  }
  if (pressure && fields.p_field->size() != grid.size()) {
    throw ShapeMismatchError("pressure field length differs from the grid size");
  }

  const std::vector<double>* p = pressure ? &*fields.p_field : nullptr;
  std::vector<std::vector<double>> coeff(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto s = state_of(fields.u_fields, p, k);
    coeff[k] = coefficients_at(spec, std::span<const double>(s.data(), n), s.back());
  }

  const std::size_t eqs = n + (pressure ? 1 : 0);
  ResidualReport rep;
  for (std::size_t i = 0; i < n; ++i) rep.equations.push_back("u" + std::to_string(i + 1));
  if (pressure) rep.equations.push_back("p");
  rep.per_equation_linf.assign(eqs, 0.0);
  std::vector<double> sq(eqs, 0.0);
  rep.grid_spacing = {grid.h1(), grid.h2()};
  std::size_t count = 0;

  auto mean = [&](std::size_t k, std::size_t nb, std::size_t slot) {
    return 0.5 * (coeff[k][slot] + coeff[nb][slot]);
  };
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid.is_dirichlet(k)) {
      for (std::size_t i = 0; i < n; ++i) {
        const double target = grid.tag(k) == NodeTag::gamma3 ? spec.u_star()[i] : 0.0;
        rep.boundary_max_error = std::max(rep.boundary_max_error, std::abs(fields.u_fields[i][k] - target));
      }
      if (p) {
        const double target = grid.tag(k) == NodeTag::gamma3 ? spec.p_star() : 0.0;
        rep.boundary_max_error = std::max(rep.boundary_max_error, std::abs((*p)[k] - target));
      }
      continue;
    }
    ++count;
    const auto nbs = physical_neighbours(grid, k);
    for (std::size_t i = 0; i < eqs; ++i) {
      double res = 0.0;
      for (const auto& nb : nbs) {
        double flux = 0.0;
        if (i < n) {
          for (std::size_t j = 0; j < n; ++j) {
            flux += mean(k, nb.node, i * n + j) * (fields.u_fields[j][nb.node] - fields.u_fields[j][k]);
          }
          if (p) flux += mean(k, nb.node, n * n + i) * ((*p)[nb.node] - (*p)[k]);
        } else {
          flux = mean(k, nb.node, n * n + n) * ((*p)[nb.node] - (*p)[k]);
        }
        res += nb.weight * flux;
      }
      rep.per_equation_linf[i] = std::max(rep.per_equation_linf[i], std::abs(res));
      sq[i] += res * res;
    }
  }
  rep.per_equation_l2.resize(eqs);
  for (std::size_t i = 0; i < eqs; ++i) {
    rep.per_equation_l2[i] = count ? std::sqrt(sq[i] / static_cast<double>(count)) : 0.0;
  }
  return rep;
}

std::vector<double> theta_linearity(const ProfileSolution& sol, const ProblemSpec& spec) {
  if (spec.mode() != Mode::molecular) throw ConfigError("theta linearity applies to molecular problems");
  const auto& prof = sol.profiles;
  const std::size_t n = spec.n(), nn = prof.mesh.size();
  const double h = prof.mesh[1] - prof.mesh[0];
  std::vector<std::vector<double>> du(n);
  for (std::size_t j = 0; j < n; ++j) du[j] = nodal_derivative(h, prof.values[j]);

  std::vector<std::vector<double>> flux(n, std::vector<double>(nn, 0.0));
  std::vector<double> s(n);
  for (std::size_t k = 0; k < nn; ++k) {
    for (std::size_t j = 0; j < n; ++j) s[j] = prof.values[j][k];
    const Eigen::MatrixXd a = spec.matrix_a(s, prof.mesh[k]);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        flux[i][k] += a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * du[j][k];
      }
    }
  }
  std::vector<double> dev(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto theta = cumulative_integral(h, flux[i]);
    for (std::size_t k = 0; k < nn; ++k) {
      dev[i] = std::max(dev[i], std::abs(theta[k] - sol.gamma[i] * prof.mesh[k]));
    }
  }
  return dev;
}

DirectSolveResult direct_coupled_solve(const ProblemSpec& spec, std::shared_ptr<const Grid> grid,
                                       const DirectSolveOptions& opts) {
  const Grid& g = *grid;
  const std::size_t n = spec.n(), nodes = g.size();
  const bool pressure = spec.mode() != Mode::molecular;
  const std::size_t slots = n * n + n + 1;

  // start from the constant-coefficient solution
  const PivotField z = solve_pivot(g, 1e-12);
  std::vector<std::vector<double>> u(n, std::vector<double>(nodes));
  std::vector<double> p(nodes);
  for (std::size_t k = 0; k < nodes; ++k) {
    for (std::size_t i = 0; i < n; ++i) u[i][k] = spec.u_star()[i] * z.values[k];
    p[k] = spec.p_star() * z.values[k];
  }
  std::vector<std::vector<double>> boundary_u = u;
  std::vector<double> boundary_p = p;

  const DiffusionStencil stencil(g);
  // face (k, k+1) -> 2k, face (k, k+n1) -> 2k+1
  std::vector<double> faces(2 * nodes * slots, 0.0);
  auto face_id = [&](std::size_t a, std::size_t b) {
    const std::size_t lo = std::min(a, b), hi = std::max(a, b);
    return 2 * lo + (hi - lo == 1 ? 0 : 1);
  };
  static constexpr std::array<double, 3> kGaussT{0.5 - 0.3872983346207417, 0.5, 0.5 + 0.3872983346207417};
  static constexpr std::array<double, 3> kGaussW{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

  auto refresh_faces = [&]() {
    std::vector<double> sa(n + 1), sb(n + 1), st(n + 1);
    for (const std::size_t k : stencil.unknowns()) {
      for (const auto& e : stencil.row(k)) {
        const std::size_t f = face_id(k, e.node);
        sa = state_of(u, pressure ? &p : nullptr, k);
        sb = state_of(u, pressure ? &p : nullptr, e.node);
        double* out = &faces[f * slots];
        std::fill(out, out + slots, 0.0);
        for (std::size_t q = 0; q < 3; ++q) {
          for (std::size_t v = 0; v <= n; ++v) st[v] = sa[v] + kGaussT[q] * (sb[v] - sa[v]);
          const auto c = coefficients_at(spec, std::span<const double>(st.data(), n), st.back());
          for (std::size_t s = 0; s < slots; ++s) out[s] += kGaussW[q] * c[s];
        }
      }
    }
  };
  auto face_coeff = [&](std::size_t slot) -> FaceCoefficient {
    return [&, slot](std::size_t a, std::size_t b) { return faces[face_id(a, b) * slots + slot]; };
  };

  DiffusionSolveOptions lin;
  DirectSolveResult result;
  double previous = std::numeric_limits<double>::infinity();
  std::size_t growth = 0;
  for (std::size_t it = 1; it <= opts.max_outer; ++it) {
    double update = 0.0;
    refresh_faces();
    if (pressure) {
      auto sol = solve_diffusion(stencil, face_coeff(n * n + n), boundary_p, {}, p, lin);
      for (std::size_t k = 0; k < nodes; ++k) update = std::max(update, std::abs(sol.values[k] - p[k]));
      p = std::move(sol.values);
      refresh_faces();
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> source(nodes, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const auto part = apply_diffusion(stencil, face_coeff(i * n + j), u[j]);
        for (std::size_t k = 0; k < nodes; ++k) source[k] -= part[k];
      }
      if (pressure && spec.has_b()) {
        const auto part = apply_diffusion(stencil, face_coeff(n * n + i), p);
        for (std::size_t k = 0; k < nodes; ++k) source[k] -= part[k];
      }
      auto sol = solve_diffusion(stencil, face_coeff(i * n + i), boundary_u[i], source, u[i], lin);
      for (std::size_t k = 0; k < nodes; ++k) update = std::max(update, std::abs(sol.values[k] - u[i][k]));
      u[i] = std::move(sol.values);
    }
    result.last_update = update;
    result.outer_iterations = it;
    if (update <= opts.tol) {
      result.fields.grid = grid;
      result.fields.u_fields = std::move(u);
      if (pressure) result.fields.p_field = std::move(p);
      return result;
    }
    growth = update > previous ? growth + 1 : 0;
    if (growth >= 5) {
      throw NonConvergenceError("direct coupled solve diverges: update grew for 5 consecutive sweeps", update);
    }
    previous = update;
  }
  throw NonConvergenceError("direct coupled solve reached the outer iteration cap", result.last_update);
}

FieldDifference compare_fields(const FieldSet& a, const FieldSet& b) {
  if (a.u_fields.size() != b.u_fields.size() || a.p_field.has_value() != b.p_field.has_value()) {
    throw ShapeMismatchError("field sets hold different unknowns");
  }
  FieldDifference d;
  double sq = 0.0;
  std::size_t count = 0;
  auto accumulate = [&](const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ShapeMismatchError("field sets live on different grids");
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double e = std::abs(x[k] - y[k]);
      d.linf = std::max(d.linf, e);
      sq += e * e;
    }
    count += x.size();
  };
  for (std::size_t i = 0; i < a.u_fields.size(); ++i) accumulate(a.u_fields[i], b.u_fields[i]);
  if (a.p_field) accumulate(*a.p_field, *b.p_field);
  d.l2 = count ? std::sqrt(sq / static_cast<double>(count)) : 0.0;
  return d;
}

}  // namespace funsol
