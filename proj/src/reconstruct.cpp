#include "funsol/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "funsol/error.hpp"
#include "funsol/numerics.hpp"

namespace funsol {

namespace {

constexpr double kRangeSlack = 1e-12;

std::vector<double> state_at(const FieldSet& f, std::size_t k) {
  std::vector<double> s(f.u_fields.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = f.u_fields[i][k];
  return s;
}

// derivative along one lattice axis; second order, one-sided at the ends
double axis_derivative(const std::vector<double>& v, std::size_t k, std::size_t idx, std::size_t count,
                       std::size_t stride, double h) {
  if (count < 3) return 0.0;
  if (idx == 0) return (-3.0 * v[k] + 4.0 * v[k + stride] - v[k + 2 * stride]) / (2.0 * h);
  if (idx + 1 == count) return (3.0 * v[k] - 4.0 * v[k - stride] + v[k - 2 * stride]) / (2.0 * h);
  return (v[k + stride] - v[k - stride]) / (2.0 * h);
}

std::vector<std::array<double, 2>> gradient(const Grid& g, const std::vector<double>& v) {
  std::vector<std::array<double, 2>> out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const std::size_t i = g.i_of(k), j = g.j_of(k);
    const double d1 = axis_derivative(v, k, i, g.n1(), 1, g.h1());
    const double d2 = axis_derivative(v, k, j, g.n2(), g.n1(), g.h2());
    if (g.coord_system() == CoordSystem::cartesian) {
      out[k] = {d1, d2};
    } else {
      const double r = g.axis1(i), th = g.axis2(j);
      const double dt = d2 / r;
      out[k] = {std::cos(th) * d1 - std::sin(th) * dt, std::sin(th) * d1 + std::cos(th) * dt};
    }
  }
  return out;
}

std::vector<double> evaluate_profile(const Profiles& prof, std::size_t i, const std::vector<double>& at) {
  std::vector<double> out(at.size());
  for (std::size_t k = 0; k < at.size(); ++k) out[k] = interpolate_linear(prof.mesh, prof.values[i], at[k]);
  return out;
}

void check_span(const Profiles& prof, const std::vector<double>& at) {
  const double lo = prof.mesh.front() - kRangeSlack, hi = prof.mesh.back() + kRangeSlack;
  for (double v : at) {
    if (v < lo || v > hi) {
      throw RangeError("pivot value " + std::to_string(v) + " lies outside the profile mesh [" +
                       std::to_string(prof.mesh.front()) + ", " + std::to_string(prof.mesh.back()) + "]");
    }
  }
}

void pin_dirichlet(FieldSet& f, const ProblemSpec& spec) {
  const Grid& g = *f.grid;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.tag(k) == NodeTag::gamma1) {
      for (auto& u : f.u_fields) u[k] = 0.0;
      if (f.p_field) (*f.p_field)[k] = 0.0;
    } else if (g.tag(k) == NodeTag::gamma3) {
      for (std::size_t i = 0; i < f.u_fields.size(); ++i) f.u_fields[i][k] = spec.u_star()[i];
      if (f.p_field) (*f.p_field)[k] = spec.p_star();
    }
  }
}

}  // namespace

ThetaMap::ThetaMap(std::vector<double> p_nodes, std::vector<double> theta_values)
    : p_(std::move(p_nodes)), theta_(std::move(theta_values)) {
  if (p_.size() != theta_.size() || p_.size() < 2) {
    throw ShapeMismatchError("theta map needs matching node and value arrays of size >= 2");
  }
  if (theta_.front() != 0.0) throw NonPositiveError("theta map must start at 0");
  for (std::size_t k = 1; k < p_.size(); ++k) {
    if (!(theta_[k] > theta_[k - 1])) {
      throw NonPositiveError("theta map is not strictly increasing near p = " + std::to_string(p_[k]));
    }
  }
}

double ThetaMap::operator()(double p) const { return interpolate_linear(p_, theta_, p); }

double ThetaMap::invert(double eta) const { return interpolate_linear(theta_, p_, eta); }

ThetaMap kirchhoff_theta(const ProfileSolution& sol, const ProblemSpec& spec) {
  if (spec.mode() == Mode::molecular) throw ConfigError("Kirchhoff map needs a pressure pivot (darcy or scalar mode)");
  const auto& prof = sol.profiles;
  const std::size_t nn = prof.mesh.size();
  std::vector<double> weight(nn), state(spec.n());
  for (std::size_t k = 0; k < nn; ++k) {
    for (std::size_t i = 0; i < spec.n(); ++i) state[i] = prof.values[i][k];
    weight[k] = spec.b_next(state, prof.mesh[k]);
    if (!(weight[k] > 0.0)) {
      throw NonPositiveError("b_next = " + std::to_string(weight[k]) + " is not positive at p = " +
                             std::to_string(prof.mesh[k]));
    }
  }
  auto theta = cumulative_integral(prof.mesh[1] - prof.mesh[0], weight);
  theta.front() = 0.0;
  return ThetaMap(prof.mesh, std::move(theta));
}

std::vector<double> pressure_from_pivot(const ThetaMap& theta, const PivotField& pivot) {
  std::vector<double> p(pivot.values.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = theta.invert(theta.eta_star() * pivot.values[k]);
  return p;
}

FieldSet compose_fields(const ProfileSolution& sol, const PivotField& pivot, const ProblemSpec& spec) {
  if (spec.mode() != Mode::molecular) throw ConfigError("compose_fields applies to molecular problems");
  check_span(sol.profiles, pivot.values);
  FieldSet f;
  f.grid = pivot.grid;
  for (std::size_t i = 0; i < spec.n(); ++i) f.u_fields.push_back(evaluate_profile(sol.profiles, i, pivot.values));
  pin_dirichlet(f, spec);
  return f;
}

FieldSet darcy_reconstruct(const ProfileSolution& sol, const PivotField& pivot, const ProblemSpec& spec) {
  const ThetaMap theta = kirchhoff_theta(sol, spec);
  auto p = pressure_from_pivot(theta, pivot);
  check_span(sol.profiles, p);
  FieldSet f;
  f.grid = pivot.grid;
  for (std::size_t i = 0; i < spec.n(); ++i) f.u_fields.push_back(evaluate_profile(sol.profiles, i, p));
  f.p_field = std::move(p);
  pin_dirichlet(f, spec);
  return f;
}

void attach_fluxes(FieldSet& fields, const ProblemSpec& spec) {
  const Grid& g = *fields.grid;
  const std::size_t n = spec.n();
  std::vector<std::vector<std::array<double, 2>>> grad_u;
  for (const auto& u : fields.u_fields) grad_u.push_back(gradient(g, u));
  std::vector<std::array<double, 2>> grad_p;
  if (fields.p_field) grad_p = gradient(g, *fields.p_field);

  fields.fluxes.clear();
  for (std::size_t i = 0; i < n; ++i) fields.fluxes.push_back({"q" + std::to_string(i + 1), {}});
  if (fields.p_field) fields.fluxes.push_back({"v", {}});

  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto s = state_at(fields, k);
    const double p = fields.p_field ? (*fields.p_field)[k] : 0.0;
    const Eigen::MatrixXd a = spec.matrix_a(s, p);
    const Eigen::VectorXd b = spec.vector_b(s, p);
    for (std::size_t i = 0; i < n; ++i) {
      std::array<double, 2> q{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) {
        const double aij = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        q[0] += aij * grad_u[j][k][0];
        q[1] += aij * grad_u[j][k][1];
      }
      if (fields.p_field) {
        q[0] += b[static_cast<Eigen::Index>(i)] * grad_p[k][0];
        q[1] += b[static_cast<Eigen::Index>(i)] * grad_p[k][1];
      }
      fields.fluxes[i].values.push_back(q);
    }
    if (fields.p_field) {
      const double bn = spec.b_next(s, p);
      fields.fluxes[n].values.push_back({-bn * grad_p[k][0], -bn * grad_p[k][1]});
    }
  }
}

}  // namespace funsol
