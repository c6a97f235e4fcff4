#include "funsol/twopoint.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "funsol/error.hpp"
#include "funsol/numerics.hpp"

namespace funsol {

namespace {

constexpr double kSingularCondition = 1e12;

std::vector<double> node_state(const Profiles& u, std::size_t k) {
  std::vector<double> s(u.values.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = u.values[i][k];
  return s;
}

double mesh_step(const Profiles& u) {
  if (u.mesh.size() < 3 || u.mesh.size() % 2 == 0) {
    throw std::invalid_argument("profile mesh must have an odd number (>= 3) of nodes");
  }
  return u.mesh[1] - u.mesh[0];
}

void require_molecular(const ProblemSpec& spec, const char* op) {
  if (spec.mode() != Mode::molecular) {
    throw ConfigError(std::string(op) + " applies to molecular problems only");
  }
}

/// Running integrals int_0^{z_k} A^{-1}(U(t)) dt at every node.
std::vector<Eigen::MatrixXd> cumulative_inverse(const Profiles& u, const ProblemSpec& spec) {
  const double h = mesh_step(u);
  const std::size_t n = spec.n(), nn = u.mesh.size();
  std::vector<Eigen::MatrixXd> inv(nn);
  for (std::size_t k = 0; k < nn; ++k) {
    const Eigen::MatrixXd a = spec.matrix_a(node_state(u, k), u.mesh[k]);
    if (condition_estimate(a) > kSingularCondition) {
      throw SingularMatrixError("A(U(t)) is singular at t = " + std::to_string(u.mesh[k]));
    }
    inv[k] = a.inverse();
  }
  std::vector<Eigen::MatrixXd> cum(nn, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                             static_cast<Eigen::Index>(n)));
  std::vector<double> f(nn);
  for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(n); ++r) {
    for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(n); ++c) {
      for (std::size_t k = 0; k < nn; ++k) f[k] = inv[k](r, c);
      const auto run = cumulative_integral(h, f);
      for (std::size_t k = 0; k < nn; ++k) cum[k](r, c) = run[k];
    }
  }
  return cum;
}

Eigen::VectorXd solve_averaged(const Eigen::MatrixXd& total, const ProblemSpec& spec) {
  if (condition_estimate(total) > kSingularCondition) {
    throw SingularMatrixError("averaged matrix int_0^1 A^{-1} dt is singular");
  }
  return total.partialPivLu().solve(spec.target());
}

double euclidean(const Eigen::VectorXd& v) { return v.norm(); }

void accumulate_eigen(const Eigen::MatrixXd& a, EllipticityBounds& b) {
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  b.m = std::min(b.m, es.eigenvalues().minCoeff());
  b.big_m = std::max(b.big_m, es.eigenvalues().maxCoeff());
}

EllipticityBounds lattice_bounds(const ProblemSpec& spec, const SampleBox& box,
                                 std::size_t samples) {
  const std::size_t dims = box.size();
  std::vector<std::size_t> counts(dims);
  for (std::size_t d = 0; d < dims; ++d) counts[d] = box[d][0] == box[d][1] ? 1 : samples;

  EllipticityBounds b{std::numeric_limits<double>::infinity(),
                      -std::numeric_limits<double>::infinity()};
  std::vector<std::size_t> idx(dims, 0);
  std::vector<double> point(dims);
  for (;;) {
    for (std::size_t d = 0; d < dims; ++d) {
      const double t = counts[d] == 1 ? 0.0
                                      : static_cast<double>(idx[d]) / static_cast<double>(counts[d] - 1);
      point[d] = box[d][0] + t * (box[d][1] - box[d][0]);
    }
    accumulate_eigen(spec.matrix_a(std::span<const double>(point.data(), dims - 1), point.back()), b);
    std::size_t d = 0;
    while (d < dims && ++idx[d] == counts[d]) idx[d++] = 0;
    if (d == dims) break;
  }
  return b;
}

void check_elliptic(const EllipticityBounds& b) {
  if (!(b.m > 0.0)) {
    throw NonEllipticError("symmetric part of A is not positive definite (sampled m = " +
                               std::to_string(b.m) + ")",
                           b.m);
  }
}

ProfileSolution finish(Profiles profiles, std::vector<double> gamma, const ProblemSpec& spec) {
  ProfileSolution sol;
  sol.two_point_residual = collocation_residual(profiles, gamma, spec);
  for (std::size_t i = 0; i < spec.n(); ++i) {
    sol.boundary_error =
        std::max(sol.boundary_error, std::abs(profiles.values[i].back() - spec.u_star()[i]));
  }
  sol.profiles = std::move(profiles);
  sol.gamma = std::move(gamma);
  return sol;
}

}  // namespace

EllipticityBounds ellipticity_bounds(const ProblemSpec& spec, const SampleBox& box,
                                     std::size_t samples) {
  if (box.size() != spec.n() + 1) throw ConfigError("sample box needs one range per variable u1..un, p");
  if (samples < 2) throw ConfigError("ellipticity check needs at least 2 samples per axis");
  const auto b = lattice_bounds(spec, box, samples);
  check_elliptic(b);
  return b;
}

std::vector<double> gamma_functional(const Profiles& u, const ProblemSpec& spec) {
  require_molecular(spec, "gamma_functional");
  const auto cum = cumulative_inverse(u, spec);
  const Eigen::VectorXd g = solve_averaged(cum.back(), spec);
  return {g.data(), g.data() + g.size()};
}

Profiles apply_fixed_point_operator(const Profiles& u, const ProblemSpec& spec) {
  require_molecular(spec, "apply_fixed_point_operator");
  const auto cum = cumulative_inverse(u, spec);
  const Eigen::VectorXd w = solve_averaged(cum.back(), spec);
  const std::size_t n = spec.n(), nn = u.mesh.size();

  Profiles out{u.mesh, std::vector<std::vector<double>>(n, std::vector<double>(nn, 0.0))};
  for (std::size_t k = 1; k + 1 < nn; ++k) {
    const Eigen::VectorXd t = cum[k] * w;
    for (std::size_t i = 0; i < n; ++i) out.values[i][k] = t[static_cast<Eigen::Index>(i)];
  }
  for (std::size_t i = 0; i < n; ++i) out.values[i][nn - 1] = spec.u_star()[i];
  return out;
}

ProfileSolution solve_fixed_point(const ProblemSpec& spec, const FixedPointOptions& opts) {
  require_molecular(spec, "solve_fixed_point");
  if (!(opts.damping > 0.0 && opts.damping <= 1.0)) throw ConfigError("damping must lie in (0,1]");
  const std::size_t nn = make_odd(std::max<std::size_t>(opts.n_nodes, 5));
  const std::size_t n = spec.n();
  const double target_norm = euclidean(spec.target());

  Profiles u{uniform_mesh(0.0, 1.0, nn), std::vector<std::vector<double>>(n, std::vector<double>(nn))};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < nn; ++k) u.values[i][k] = u.mesh[k] * spec.u_star()[i];
  }

  std::vector<FixedPointStep> history;
  double damping = opts.damping;
  double previous = std::numeric_limits<double>::infinity();
  double update = previous;

  for (std::size_t it = 1; it <= opts.max_iter; ++it) {
    // Bounds on the box spanned by the current iterate, widened by its actual node values.
    SampleBox box(n + 1, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
      const auto [lo, hi] = std::minmax_element(u.values[i].begin(), u.values[i].end());
      box[i] = {*lo, *hi};
    }
    auto bounds = lattice_bounds(spec, box, opts.box_samples);
    for (std::size_t k = 0; k < nn; ++k) accumulate_eigen(spec.matrix_a(node_state(u, k), 0.0), bounds);
    check_elliptic(bounds);

    const Profiles t = apply_fixed_point_operator(u, spec);
    FixedPointStep step;
    step.m = bounds.m;
    step.big_m = bounds.big_m;
    step.bound = bounds.big_m / bounds.m * target_norm;
    step.damping = damping;
    update = 0.0;
    for (std::size_t k = 0; k < nn; ++k) {
      double sq = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double tv = t.values[i][k];
        sq += tv * tv;
        const double next = (1.0 - damping) * u.values[i][k] + damping * tv;
        update = std::max(update, std::abs(next - u.values[i][k]));
        u.values[i][k] = next;
      }
      step.sup_t = std::max(step.sup_t, std::sqrt(sq));
    }
    step.update_norm = update;
    history.push_back(step);

    if (update <= opts.tol) {
      auto gamma = gamma_functional(u, spec);
      auto sol = finish(std::move(u), std::move(gamma), spec);
      sol.iterations = it;
      sol.fixed_point_history = std::move(history);
      return sol;
    }
    if (update > previous) damping = std::max(damping / 2.0, 1.0 / 16.0);
    previous = update;
  }
  throw NonConvergenceError("fixed-point iteration reached the iteration cap (last update " +
                                std::to_string(update) + ")",
                            update);
}

Profiles integrate_profiles(const ProblemSpec& spec, const std::vector<double>& gamma,
                            std::size_t n_nodes) {
  if (gamma.size() != spec.n()) throw ConfigError("gamma must have n entries");
  if (n_nodes < 2) throw ConfigError("profile mesh needs at least 2 nodes");
  const std::size_t n = spec.n();
  Profiles out{uniform_mesh(0.0, spec.p_star(), n_nodes),
               std::vector<std::vector<double>>(n, std::vector<double>(n_nodes, 0.0))};
  const double h = spec.p_star() / static_cast<double>(n_nodes - 1);

  Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  auto rhs = [&](double p, const Eigen::VectorXd& state) {
    return spec.profile_slope(std::span<const double>(state.data(), n), p, gamma);
  };
  for (std::size_t k = 0; k + 1 < n_nodes; ++k) {
    const double p = out.mesh[k];
    const Eigen::VectorXd k1 = rhs(p, y);
    const Eigen::VectorXd k2 = rhs(p + 0.5 * h, y + 0.5 * h * k1);
    const Eigen::VectorXd k3 = rhs(p + 0.5 * h, y + 0.5 * h * k2);
    const Eigen::VectorXd k4 = rhs(p + h, y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    for (std::size_t i = 0; i < n; ++i) out.values[i][k + 1] = y[static_cast<Eigen::Index>(i)];
  }
  return out;
}

Eigen::MatrixXd shooting_jacobian(const ProblemSpec& spec, const std::vector<double>& gamma,
                                  std::size_t n_nodes) {
  const std::size_t n = spec.n();
  auto endpoint = [&](const std::vector<double>& g) {
    const auto prof = integrate_profiles(spec, g, n_nodes);
    Eigen::VectorXd e(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) e[static_cast<Eigen::Index>(i)] = prof.values[i].back();
    return e;
  };
  const Eigen::VectorXd base = endpoint(gamma);
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    auto shifted = gamma;
    const double step = 1e-6 * (1.0 + std::abs(gamma[j]));
    shifted[j] += step;
    jac.col(static_cast<Eigen::Index>(j)) = (endpoint(shifted) - base) / step;
  }
  return jac;
}

std::vector<double> linearized_gamma(const ProblemSpec& spec) {
  const std::size_t n = spec.n();
  const std::vector<double> origin(n, 0.0);
  const Eigen::MatrixXd a0 = spec.matrix_a(origin, 0.0);
  const double det = a0.determinant();
  const double scale = std::pow(std::max(1.0, a0.cwiseAbs().maxCoeff()), static_cast<double>(n));
  if (!(std::abs(det) > 1e-14 * scale)) {
    throw DegenerateLinearizationError("det A(0) = 0: the linearization at the origin is degenerate");
  }
  const double bn0 = spec.b_next(origin, 0.0);
  if (bn0 == 0.0) {
    throw DegenerateLinearizationError("b_next(0) = 0: flux constants do not enter the linearization");
  }
  const Eigen::VectorXd g = (a0 * spec.target() / spec.p_star() + spec.vector_b(origin, 0.0)) / bn0;
  return {g.data(), g.data() + g.size()};
}

ProfileSolution solve_shooting(const ProblemSpec& spec, const ShootingOptions& opts) {
  if (spec.mode() == Mode::scalar) throw ConfigError("shooting backend handles molecular and darcy modes");
  const std::size_t n = spec.n();
  const std::size_t nn = make_odd(std::max<std::size_t>(opts.n_nodes, 5));
  std::vector<double> gamma = linearized_gamma(spec);

  // Jacobian of the frozen-coefficient problem, p* b_{n+1}(0) A(0)^{-1}: the natural scale
  // against which a collapsing shooting Jacobian is judged.
  const std::vector<double> origin(n, 0.0);
  const Eigen::MatrixXd jref =
      spec.p_star() * spec.b_next(origin, 0.0) * spec.matrix_a(origin, 0.0).inverse();
  const double ref_norm = jref.cwiseAbs().colwise().sum().maxCoeff();

  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it <= opts.max_newton; ++it) {
    Profiles prof = integrate_profiles(spec, gamma, nn);
    Eigen::VectorXd s(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      s[static_cast<Eigen::Index>(i)] = prof.values[i].back() - spec.u_star()[i];
    }
    residual = s.cwiseAbs().maxCoeff();

    const Eigen::MatrixXd jac = shooting_jacobian(spec, gamma, nn);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    double condition = std::numeric_limits<double>::infinity();
    if (lu.isInvertible()) {
      const double jn = jac.cwiseAbs().colwise().sum().maxCoeff();
      const double inv_n = lu.inverse().cwiseAbs().colwise().sum().maxCoeff();
      condition = inv_n * std::max(jn, ref_norm);
    }
    if (!(condition <= opts.singular_condition)) {
      throw SingularJacobianError("shooting Jacobian is singular (condition estimate " +
                                      std::to_string(condition) +
                                      "): the two-point problem is resonant",
                                  condition);
    }
    if (residual <= opts.tol) {
      auto sol = finish(std::move(prof), gamma, spec);
      sol.iterations = it;
      sol.jacobian_condition = condition;
      return sol;
    }
    const Eigen::VectorXd delta = lu.solve(s);
    for (std::size_t i = 0; i < n; ++i) gamma[i] -= delta[static_cast<Eigen::Index>(i)];
  }
  throw NonConvergenceError("Newton shooting reached the iteration cap", residual);
}

ProfileSolution solve_scalar(const ProblemSpec& spec, const std::optional<ScalarBracketHints>& hints,
                             const ScalarOptions& opts) {
  if (spec.n() != 1) throw ConfigError("scalar solver requires n = 1");
  if (spec.has_b()) throw ConfigError("scalar solver requires b1 to be absent");
  const std::size_t nn = make_odd(std::max<std::size_t>(opts.n_nodes, 5));
  const double target = spec.u_star()[0];
  const double p_star = spec.p_star();

  // F = b_next / a11 must be positive where the monotone profile can go.
  const double u_lo = std::min(0.0, target), u_hi = std::max(0.0, target);
  const std::size_t s = std::max<std::size_t>(opts.check_samples, 2);
  for (std::size_t ip = 0; ip < s; ++ip) {
    const double p = p_star * static_cast<double>(ip) / static_cast<double>(s - 1);
    for (std::size_t iu = 0; iu < s; ++iu) {
      const double u = u_lo + (u_hi - u_lo) * static_cast<double>(iu) / static_cast<double>(s - 1);
      const std::array<double, 1> state{u};
      const double a = spec.matrix_a(state, p)(0, 0);
      const double f = a != 0.0 ? spec.b_next(state, p) / a : -1.0;
      if (!(f > 0.0)) {
        throw NonPositiveError("scalar right side F = b_next/a11 is not positive at (u, p) = (" +
                               std::to_string(u) + ", " + std::to_string(p) + ")");
      }
    }
  }

  if (target == 0.0) {
    Profiles zero{uniform_mesh(0.0, p_star, nn), {std::vector<double>(nn, 0.0)}};
    return finish(std::move(zero), {0.0}, spec);
  }

  std::vector<std::array<double, 2>> samples;
  auto endpoint = [&](double g) {
    const double e = integrate_profiles(spec, {g}, nn).values[0].back();
    samples.push_back({g, e});
    return e;
  };
  const double sign = target > 0.0 ? 1.0 : -1.0;
  // Invariant: sign*(g(lo) - u*) <= 0 <= sign*(g(hi) - u*).
  auto below = [&](double value) { return sign * (value - target) < 0.0; };

  double lo = 0.0, hi = 0.0;
  bool bracketed = false;
  std::optional<double> hit;
  if (hints && hints->r_integral > 0.0 && hints->q_integral > 0.0) {
    lo = target / hints->q_integral;
    hi = target / hints->r_integral;
    const double at_lo = endpoint(lo), at_hi = endpoint(hi);
    if (std::abs(at_lo - target) <= opts.tol) {
      hit = lo;
    } else if (std::abs(at_hi - target) <= opts.tol) {
      hit = hi;
    }
    bracketed = below(at_lo) && !below(at_hi);
  }
  if (!bracketed && !hit) {
    lo = 0.0;
    hi = sign;
    std::size_t expansions = 0;
    while (below(endpoint(hi))) {
      if (++expansions > opts.max_expansions) {
        throw BracketFailureError("no bracket for gamma after " + std::to_string(opts.max_expansions) +
                                  " expansions");
      }
      lo = hi;
      hi *= 2.0;
    }
  }

  double gamma = hit.value_or(0.5 * (lo + hi));
  for (std::size_t it = 0; !hit && it < 200; ++it) {
    gamma = 0.5 * (lo + hi);
    const double e = endpoint(gamma);
    if (std::abs(e - target) <= opts.tol) break;
    if (below(e)) {
      lo = gamma;
    } else {
      hi = gamma;
    }
    if (std::abs(hi - lo) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(gamma)) break;
  }

  // top up to five samples below the root, where the profile stays inside the checked box
  for (std::size_t j = 1; samples.size() < 5; ++j) endpoint(gamma * static_cast<double>(j) / 5.0);

  auto sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (sorted[k][0] > sorted[k - 1][0] && sorted[k][1] < sorted[k - 1][1]) {
      throw NonPositiveError("endpoint map gamma -> U(p*) is not monotone; F changes sign along the profile");
    }
  }

  auto sol = finish(integrate_profiles(spec, {gamma}, nn), {gamma}, spec);
  sol.iterations = samples.size();
  sol.scalar_samples = std::move(samples);
  return sol;
}

double collocation_residual(const Profiles& u, const std::vector<double>& gamma,
                            const ProblemSpec& spec) {
  const std::size_t nn = u.mesh.size(), n = spec.n();
  if (nn < 4) return 0.0;
  const double h = u.mesh[1] - u.mesh[0];
  double worst = 0.0;
  std::vector<double> mid(n), slope(n);
  for (std::size_t k = 1; k + 2 < nn; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& v = u.values[i];
      mid[i] = (-v[k - 1] + 9.0 * v[k] + 9.0 * v[k + 1] - v[k + 2]) / 16.0;
      slope[i] = (v[k - 1] - 27.0 * v[k] + 27.0 * v[k + 1] - v[k + 2]) / (24.0 * h);
    }
    const double p = 0.5 * (u.mesh[k] + u.mesh[k + 1]);
    const Eigen::MatrixXd a = spec.matrix_a(mid, p);
    const Eigen::VectorXd b = spec.vector_b(mid, p);
    const double bn = spec.b_next(mid, p);
    const Eigen::VectorXd r =
        a * Eigen::Map<const Eigen::VectorXd>(slope.data(), static_cast<Eigen::Index>(n)) + b -
        bn * Eigen::Map<const Eigen::VectorXd>(gamma.data(), static_cast<Eigen::Index>(n));
    worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace funsol
