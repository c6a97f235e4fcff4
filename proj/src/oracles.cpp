#include "funsol/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include "funsol/error.hpp"
#include "funsol/twopoint.hpp"
#include "funsol/verify.hpp"

namespace funsol {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

// solver settings pinned for every suite run
constexpr double kProfileTol = 1e-10;
constexpr double kScalarTol = 1e-12;
constexpr std::size_t kProfileNodes = 1001;
constexpr double kPivotTol = 1e-12;
constexpr double kThetaDamping = 0.4;

ProblemSpec molecular(std::vector<std::string> a, std::vector<double> u_star) {
  const std::size_t n = u_star.size();
  return ProblemSpec(Mode::molecular, n, std::move(a), {}, std::nullopt, std::move(u_star), 1.0);
}

std::map<std::string, OracleCase> build_registry() {
  std::map<std::string, OracleCase> reg;

  {
    OracleCase c;
    c.name = "linear_pivot_rectangle";
    c.summary = "pivot on the unit square is z = x";
    c.kind = OracleKind::pivot_rectangle;
    c.field_rule = "z = x";
    c.field_rule_violation = [](const FieldSet&, const PivotField& z) {
      double m = 0.0;
      for (std::size_t k = 0; k < z.values.size(); ++k) {
        m = std::max(m, std::abs(z.values[k] - z.grid->position(k)[0]));
      }
      return m;
    };
    c.tolerance = 1e-10;
    reg.emplace(c.name, c);
  }
  {
    OracleCase c;
    c.name = "log_pivot_annulus";
    c.summary = "pivot on the quarter annulus 1 <= r <= 2 is ln(r)/ln(2)";
    c.kind = OracleKind::pivot_annulus;
    c.field_rule = "z = ln(r)/ln(2)";
    c.field_rule_violation = [](const FieldSet&, const PivotField& z) {
      double m = 0.0;
      for (std::size_t k = 0; k < z.values.size(); ++k) {
        const double r = z.grid->axis1(z.grid->i_of(k));
        m = std::max(m, std::abs(z.values[k] - std::log(r) / std::log(2.0)));
      }
      return m;
    };
    c.tolerance = 5e-3;
    reg.emplace(c.name, c);
  }
  {
    OracleCase c;
    c.name = "constant_A_molecular";
    c.summary = "constant SPD A: U = z u*, gamma = A u*";
    c.kind = OracleKind::molecular;
    c.spec = molecular({"2", "1", "1", "2"}, {1.0, 0.5});
    c.backend = "fixed_point";
    c.expected_gamma = std::vector<double>{2.5, 2.0};
    c.gamma_tolerance = 1e-10;
    c.expected_profile = [](double z) { return std::vector<double>{z, 0.5 * z}; };
    c.profile_tolerance = 1e-10;
    c.field_rule = "u_i = u_i* z";
    c.field_rule_violation = [](const FieldSet& f, const PivotField& z) {
      double m = 0.0;
      for (std::size_t k = 0; k < z.values.size(); ++k) {
        m = std::max(m, std::abs(f.u_fields[0][k] - z.values[k]));
        m = std::max(m, std::abs(f.u_fields[1][k] - 0.5 * z.values[k]));
      }
      return m;
    };
    c.tolerance = 1e-10;
    reg.emplace(c.name, c);
  }
  {
    OracleCase c;
    c.name = "diag_nonlinear_molecular";
    c.summary = "a11 = 1+u1, a22 = 1: (1+U)U' = gamma gives U1 = -1+sqrt(1+3z), gamma1 = 3/2";
    c.kind = OracleKind::molecular;
    c.spec = molecular({"1+u1", "0", "0", "1"}, {1.0, 0.0});
    c.backend = "fixed_point";
    c.expected_gamma = std::vector<double>{1.5, 0.0};
    c.gamma_tolerance = 1e-8;
    c.expected_profile = [](double z) { return std::vector<double>{-1.0 + std::sqrt(1.0 + 3.0 * z), 0.0}; };
    c.profile_tolerance = 1e-7;
    c.field_rule = "u1 = -1+sqrt(1+3z), u2 = 0";
    c.field_rule_violation = [](const FieldSet& f, const PivotField& z) {
      double m = 0.0;
      for (std::size_t k = 0; k < z.values.size(); ++k) {
        m = std::max(m, std::abs(f.u_fields[0][k] - (-1.0 + std::sqrt(1.0 + 3.0 * z.values[k]))));
        m = std::max(m, std::abs(f.u_fields[1][k]));
      }
      return m;
    };
    c.tolerance = 1e-7;
    c.check_theta_scaling = true;
    reg.emplace(c.name, c);
  }
  {
    // (0.91+U1)U1' = gamma1 - 0.3 gamma2 and U2 = gamma2 z - 0.3 U1
    OracleCase c;
    c.name = "coupled_soret_molecular";
    c.summary = "cross-coupled a12 = a21 = 0.3 with a11 = 1+u1: gamma = (1.65, 0.8)";
    c.kind = OracleKind::molecular;
    c.spec = molecular({"1+u1", "0.3", "0.3", "1"}, {1.0, 0.5});
    c.backend = "fixed_point";
    c.expected_gamma = std::vector<double>{1.65, 0.8};
    c.gamma_tolerance = 1e-8;
    c.expected_profile = [](double z) {
      const double u1 = -0.91 + std::sqrt(0.8281 + 2.82 * z);
      return std::vector<double>{u1, 0.8 * z - 0.3 * u1};
    };
    c.profile_tolerance = 1e-7;
    c.field_rule = "u1 = -0.91+sqrt(0.8281+2.82z), u2 = 0.8z - 0.3u1";
    c.field_rule_violation = [](const FieldSet& f, const PivotField& z) {
      double m = 0.0;
      for (std::size_t k = 0; k < z.values.size(); ++k) {
        const double u1 = -0.91 + std::sqrt(0.8281 + 2.82 * z.values[k]);
        m = std::max(m, std::abs(f.u_fields[0][k] - u1));
        m = std::max(m, std::abs(f.u_fields[1][k] - (0.8 * z.values[k] - 0.3 * u1)));
      }
      return m;
    };
    c.tolerance = 1e-7;
    c.check_theta_scaling = true;
    reg.emplace(c.name, c);
  }
  {
    OracleCase c;
    c.name = "equal_coef_scalar";
    c.summary = "a = b = 1+u^2+p^2, u* = 2, p* = 1: U(p) = 2p and u = 2p in the field";
    c.kind = OracleKind::pressure;
    c.spec = ProblemSpec(Mode::scalar, 1, {"1+u1^2+p^2"}, {}, std::string("1+u1^2+p^2"), {2.0}, 1.0);
    c.backend = "scalar_bisection";
    c.expected_gamma = std::vector<double>{2.0};
    c.gamma_tolerance = 1e-10;
    c.expected_profile = [](double p) { return std::vector<double>{2.0 * p}; };
    c.profile_tolerance = 1e-10;
    c.field_rule = "u = (u*/p*) p";
    c.field_rule_violation = [](const FieldSet& f, const PivotField&) {
      double m = 0.0;
      for (std::size_t k = 0; k < f.u_fields[0].size(); ++k) {
        m = std::max(m, std::abs(f.u_fields[0][k] - 2.0 * (*f.p_field)[k]));
      }
      return m;
    };
    c.tolerance = 1e-6;
    c.bracket_hints = std::array<double, 2>{1.0, 1.0};
    c.check_direct = true;
    reg.emplace(c.name, c);
  }
  {
    OracleCase c;
    c.name = "sincos_regular";
    c.summary = "a = I, b = (-u2, u1), p* = pi: only the trivial solution";
    c.kind = OracleKind::pressure;
    c.spec = ProblemSpec(Mode::darcy, 2, {"1", "0", "0", "1"}, {"-u2", "u1"}, std::nullopt, {0.0, 0.0}, kPi);
    c.backend = "shooting";
    c.expected_gamma = std::vector<double>{0.0, 0.0};
    c.gamma_tolerance = 1e-10;
    c.expected_profile = [](double) { return std::vector<double>{0.0, 0.0}; };
    c.profile_tolerance = 1e-10;
    c.field_rule = "u1 = u2 = 0";
    c.field_rule_violation = [](const FieldSet& f, const PivotField&) {
      double m = 0.0;
      for (const auto& u : f.u_fields) {
        for (double v : u) m = std::max(m, std::abs(v));
      }
      return m;
    };
    c.tolerance = 1e-10;
    c.determinant_points = {kPi / 2.0, kPi, 1.5 * kPi};
    c.expected_determinant = [](double p) { return 2.0 * (1.0 - std::cos(p)); };
    reg.emplace(c.name, c);
  }
  {
    OracleCase c;
    c.name = "sincos_resonant";
    c.summary = "a = I, b = (-u2, u1), p* = 2 pi: resonance, the shooting Jacobian is singular";
    c.kind = OracleKind::pressure;
    c.spec = ProblemSpec(Mode::darcy, 2, {"1", "0", "0", "1"}, {"-u2", "u1"}, std::nullopt, {0.0, 0.0},
                         2.0 * kPi);
    c.backend = "shooting";
    c.expect_singular = true;
    c.tolerance = 1.0;
    reg.emplace(c.name, c);
  }
  {
    OracleCase c;
    c.name = "kirchhoff_exp";
    c.summary = "b_next = a = exp(p), p* = 1: p(x) = ln(1+(e-1) z(x))";
    c.kind = OracleKind::pressure;
    c.spec = ProblemSpec(Mode::scalar, 1, {"exp(p)"}, {}, std::string("exp(p)"), {1.0}, 1.0);
    c.backend = "scalar_bisection";
    c.expected_gamma = std::vector<double>{1.0};
    c.gamma_tolerance = 1e-10;
    c.expected_profile = [](double p) { return std::vector<double>{p}; };
    c.profile_tolerance = 1e-10;
    c.field_rule = "p = ln(1+(e-1)z)";
    c.field_rule_violation = [](const FieldSet& f, const PivotField& z) {
      double m = 0.0;
      for (std::size_t k = 0; k < z.values.size(); ++k) {
        m = std::max(m, std::abs((*f.p_field)[k] - std::log(1.0 + (kE - 1.0) * z.values[k])));
      }
      return m;
    };
    c.tolerance = 1e-6;
    c.bracket_hints = std::array<double, 2>{1.0, 1.0};
    reg.emplace(c.name, c);
  }
  {
    // e^U = 1 + gamma p
    OracleCase c;
    c.name = "scalar_exp_decay";
    c.summary = "F = exp(-u), u* = 1, p* = 1: gamma = e-1 inside [u*/int q, u*/int r]";
    c.kind = OracleKind::pressure;
    c.spec = ProblemSpec(Mode::scalar, 1, {"1"}, {}, std::string("exp(-u1)"), {1.0}, 1.0);
    c.backend = "scalar_bisection";
    c.expected_gamma = std::vector<double>{kE - 1.0};
    c.gamma_tolerance = 1e-8;
    c.expected_profile = [](double p) { return std::vector<double>{std::log(1.0 + (kE - 1.0) * p)}; };
    c.profile_tolerance = 1e-8;
    c.bracket_hints = std::array<double, 2>{std::exp(-1.0), 1.0};
    c.tolerance = 1e-8;
    reg.emplace(c.name, c);
  }
  return reg;
}

const std::map<std::string, OracleCase>& registry() {
  static const auto reg = build_registry();
  return reg;
}

// ---- check helpers ----

void add(OracleResult& r, std::string quantity, double measured, double expected, double tol,
         std::string relation, bool passed) {
  r.checks.push_back({std::move(quantity), measured, expected, tol, std::move(relation), passed});
  r.passed = r.passed && passed;
}

void check_abs(OracleResult& r, std::string q, double measured, double expected, double tol) {
  add(r, std::move(q), measured, expected, tol, "abs_diff", std::abs(measured - expected) <= tol);
}

void check_le(OracleResult& r, std::string q, double measured, double bound) {
  add(r, std::move(q), measured, bound, bound, "le", measured <= bound);
}

void check_range(OracleResult& r, std::string q, double measured, double lo, double hi) {
  add(r, std::move(q), measured, lo, hi, "in_range", measured >= lo && measured <= hi);
}

void check_flag(OracleResult& r, std::string q, bool ok) {
  add(r, std::move(q), ok ? 1.0 : 0.0, 1.0, 0.0, "flag", ok);
}

std::string indexed(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

void check_solution(OracleResult& r, const OracleCase& oc, const ProfileSolution& sol, double tol,
                    const std::string& tag) {
  if (oc.expected_gamma) {
    for (std::size_t i = 0; i < sol.gamma.size(); ++i) {
      check_abs(r, indexed(tag + "gamma", i), sol.gamma[i], (*oc.expected_gamma)[i], oc.gamma_tolerance);
    }
  }
  if (oc.expected_profile) {
    double err = 0.0;
    for (std::size_t k = 0; k < sol.profiles.mesh.size(); ++k) {
      const auto e = oc.expected_profile(sol.profiles.mesh[k]);
      for (std::size_t i = 0; i < e.size(); ++i) err = std::max(err, std::abs(sol.profiles.values[i][k] - e[i]));
    }
    check_le(r, tag + "profile_sup_error", err, oc.profile_tolerance);
  }
  check_le(r, tag + "boundary_error", sol.boundary_error, tol);
  check_le(r, tag + "two_point_residual", sol.two_point_residual, 10.0 * tol);
}

std::shared_ptr<const Grid> square(std::size_t g) {
  return std::make_shared<const Grid>(build_rectangle(g, g, 1.0, 1.0));
}

// Residual refinement from g to 2g-1 nodes per side, equation by equation.
void check_refinement(OracleResult& r, const std::vector<double>& coarse, const std::vector<double>& fine,
                      const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    const std::string q = "residual_ratio_" + names[i];
    if (coarse[i] <= kExactResidualFloor && fine[i] <= kExactResidualFloor) {
      check_le(r, "residual_exact_" + names[i], std::max(coarse[i], fine[i]), kExactResidualFloor);
    } else {
      check_range(r, q, fine[i] > 0.0 ? coarse[i] / fine[i] : 0.0, 3.0, 5.0);
    }
  }
}

double iterate_bound_ratio(const ProfileSolution& sol) {
  double worst = 0.0;
  for (const auto& s : sol.fixed_point_history) {
    if (s.bound > 0.0) worst = std::max(worst, s.sup_t / s.bound);
    else worst = std::max(worst, s.sup_t > 0.0 ? 2.0 : 0.0);
  }
  return worst;
}

void run_pivot_case(OracleResult& r, const OracleCase& oc, std::size_t g) {
  auto build = [&](std::size_t n) {
    return std::make_shared<const Grid>(oc.kind == OracleKind::pivot_rectangle ? build_rectangle(n, n, 1.0, 1.0)
                                                                               : build_annulus(n, n, 1.0, 2.0));
  };
  const auto grid = build(g);
  auto z = std::make_shared<PivotField>(solve_pivot(*grid, kPivotTol));
  z->grid = grid;
  check_le(r, "pivot_residual", pivot_residual(*z), kPivotTol);
  const double err = oc.field_rule_violation(FieldSet{}, *z);
  check_le(r, "max_error(" + oc.field_rule + ")", err, oc.tolerance);
  if (oc.kind == OracleKind::pivot_annulus) {
    const auto fine_grid = build(2 * g - 1);
    auto zf = solve_pivot(*fine_grid, kPivotTol);
    zf.grid = fine_grid;
    const double fine_err = oc.field_rule_violation(FieldSet{}, zf);
    check_range(r, "refinement_ratio", err / fine_err, 3.0, 5.0);
  }
  r.pivot = z;
}

ProfileSolution molecular_solve(const ProblemSpec& spec, std::size_t nodes, double tol, double damping = 1.0) {
  FixedPointOptions fo;
  fo.n_nodes = nodes;
  fo.tol = tol;
  fo.damping = damping;
  return solve_fixed_point(spec, fo);
}

void run_molecular_case(OracleResult& r, const OracleCase& oc, std::size_t g) {
  const ProblemSpec& spec = *oc.spec;
  const auto fp = molecular_solve(spec, kProfileNodes, kProfileTol);
  check_solution(r, oc, fp, kProfileTol, "fixed_point.");
  check_le(r, "fixed_point.iterate_bound_ratio", iterate_bound_ratio(fp), 1.0 + 1e-12);

  ShootingOptions so;
  so.n_nodes = kProfileNodes;
  so.tol = kProfileTol;
  const auto sh = solve_shooting(spec, so);
  check_solution(r, oc, sh, kProfileTol, "shooting.");
  double scale = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < fp.gamma.size(); ++i) {
    scale = std::max(scale, std::abs(fp.gamma[i]));
    diff = std::max(diff, std::abs(fp.gamma[i] - sh.gamma[i]));
  }
  check_le(r, "backend_gamma_relative_difference", scale > 0.0 ? diff / scale : diff, 1e-6);

  const auto fp8 = molecular_solve(spec, kProfileNodes, 1e-8);
  const auto dev8 = theta_linearity(fp8, spec);
  check_le(r, "theta_deviation_tol1e-8", *std::max_element(dev8.begin(), dev8.end()), 1e-6);
  if (oc.check_theta_scaling) {
    const auto d6 = theta_linearity(molecular_solve(spec, kProfileNodes, 1e-6, kThetaDamping), spec);
    const auto d8 = theta_linearity(molecular_solve(spec, kProfileNodes, 1e-8, kThetaDamping), spec);
    const double a = *std::max_element(d6.begin(), d6.end());
    const double b = *std::max_element(d8.begin(), d8.end());
    check_range(r, "theta_deviation_scaling_1e-6_to_1e-8", b > 0.0 ? a / b : 0.0, 50.0, 200.0);
  }

  const auto dense = molecular_solve(spec, reconstruction_nodes(g), kProfileTol);
  std::vector<double> linf[2];
  std::vector<std::string> names;
  for (int level = 0; level < 2; ++level) {
    const auto grid = square(level == 0 ? g : 2 * g - 1);
    auto z = solve_pivot(*grid, kPivotTol);
    z.grid = grid;
    auto fields = compose_fields(dense, z, spec);
    const auto rep = divergence_residual(fields, spec, *grid);
    linf[level] = rep.per_equation_linf;
    names = rep.equations;
    if (level == 0) {
      check_le(r, "max_error(" + oc.field_rule + ")", oc.field_rule_violation(fields, z), oc.tolerance);
      check_le(r, "field_boundary_error", rep.boundary_max_error, 0.0);
      attach_fluxes(fields, spec);
      r.fields = std::make_shared<const FieldSet>(std::move(fields));
      r.pivot = std::make_shared<const PivotField>(std::move(z));
    }
  }
  check_refinement(r, linf[0], linf[1], names);
}

ProfileSolution pressure_solve(const OracleCase& oc, std::size_t nodes) {
  const ProblemSpec& spec = *oc.spec;
  if (oc.backend == "scalar_bisection") {
    std::optional<ScalarBracketHints> hints;
    if (oc.bracket_hints) hints = ScalarBracketHints{(*oc.bracket_hints)[0], (*oc.bracket_hints)[1]};
    ScalarOptions so;
    so.n_nodes = nodes;
    so.tol = kScalarTol;
    return solve_scalar(spec, hints, so);
  }
  ShootingOptions so;
  so.n_nodes = nodes;
  so.tol = kProfileTol;
  return solve_shooting(spec, so);
}

void run_pressure_case(OracleResult& r, const OracleCase& oc, std::size_t g) {
  const ProblemSpec& spec = *oc.spec;
  if (oc.expect_singular) {
    bool singular = false;
    double condition = 0.0;
    try {
      ShootingOptions so;
      so.n_nodes = kProfileNodes;
      so.tol = kProfileTol;
      (void)solve_shooting(spec, so);
    } catch (const SingularJacobianError& e) {
      singular = true;
      condition = e.condition();
    }
    check_flag(r, "singular_jacobian_reported", singular);
    if (singular) check_range(r, "jacobian_condition_estimate", condition, 1e8, std::numeric_limits<double>::max());
    return;
  }

  const double tol = oc.backend == "scalar_bisection" ? kScalarTol : kProfileTol;
  const auto sol = pressure_solve(oc, kProfileNodes);
  check_solution(r, oc, sol, tol, "");

  if (oc.backend == "scalar_bisection") {
    if (oc.bracket_hints) {
      const double u = spec.u_star()[0];
      const double lo = u / (*oc.bracket_hints)[1], hi = u / (*oc.bracket_hints)[0];
      const double slack = oc.gamma_tolerance;
      check_range(r, "gamma_in_analytic_bracket", sol.gamma[0], std::min(lo, hi) - slack,
                  std::max(lo, hi) + slack);
    }
    check_flag(r, "endpoint_map_monotone_samples>=5", sol.scalar_samples.size() >= 5);
  }
  for (double ps : oc.determinant_points) {
    const auto s = spec.with_targets(spec.u_star(), ps);
    const double det = shooting_jacobian(s, std::vector<double>(spec.n(), 0.0), kProfileNodes).determinant();
    check_abs(r, "shooting_determinant(p*=" + std::to_string(ps) + ")", det, oc.expected_determinant(ps), 1e-8);
  }
  if (!oc.field_rule_violation) return;

  const auto dense = pressure_solve(oc, reconstruction_nodes(g));
  std::vector<double> linf[2];
  std::vector<std::string> names;
  for (int level = 0; level < 2; ++level) {
    const auto grid = square(level == 0 ? g : 2 * g - 1);
    auto z = solve_pivot(*grid, kPivotTol);
    z.grid = grid;
    auto fields = darcy_reconstruct(dense, z, spec);
    const auto rep = divergence_residual(fields, spec, *grid);
    linf[level] = rep.per_equation_linf;
    names = rep.equations;
    if (level > 0) continue;

    check_le(r, "max_error(" + oc.field_rule + ")", oc.field_rule_violation(fields, z), oc.tolerance);
    check_le(r, "field_boundary_error", rep.boundary_max_error, 0.0);

    const ThetaMap theta = kirchhoff_theta(dense, spec);
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> pick(0.0, spec.p_star());
    double round_trip = 0.0;
    for (int s = 0; s < 100; ++s) {
      const double p = pick(rng);
      round_trip = std::max(round_trip, std::abs(theta.invert(theta(p)) - p));
    }
    check_le(r, "theta_round_trip_error", round_trip, 1e-10);

    std::vector<std::size_t> order(grid->size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return z.values[a] < z.values[b]; });
    bool monotone = true;
    for (std::size_t k = 1; k < order.size(); ++k) {
      monotone = monotone && (*fields.p_field)[order[k]] >= (*fields.p_field)[order[k - 1]];
    }
    check_flag(r, "pressure_monotone_in_z", monotone);

    if (oc.check_direct) {
      const auto direct = direct_coupled_solve(spec, grid);
      check_le(r, "direct_max_error(" + oc.field_rule + ")", oc.field_rule_violation(direct.fields, z), oc.tolerance);
      check_le(r, "direct_vs_functional_linf", compare_fields(fields, direct.fields).linf, oc.tolerance);
    }
    attach_fluxes(fields, spec);
    r.fields = std::make_shared<const FieldSet>(std::move(fields));
    r.pivot = std::make_shared<const PivotField>(std::move(z));
  }
  check_refinement(r, linf[0], linf[1], names);
}

}  // namespace

const std::vector<std::string>& oracle_names() {
  static const std::vector<std::string> names{
      "linear_pivot_rectangle", "log_pivot_annulus",  "constant_A_molecular", "diag_nonlinear_molecular",
      "coupled_soret_molecular", "equal_coef_scalar",      "sincos_regular",       "sincos_resonant",
      "kirchhoff_exp",          "scalar_exp_decay"};
  return names;
}

const OracleCase& get_oracle(const std::string& name) {
  const auto& reg = registry();
  const auto it = reg.find(name);
  if (it == reg.end()) throw UnknownOracleError("unknown oracle '" + name + "'");
  return it->second;
}

std::size_t reconstruction_nodes(std::size_t grid_size) {
  const std::size_t step = 2 * (grid_size - 1);
  const std::size_t k = (16000 + step - 1) / step;
  return k * step + 1;
}

OracleResult run_oracle(const OracleCase& oc, std::size_t grid_size) {
  OracleResult r;
  r.name = oc.name;
  try {
    switch (oc.kind) {
      case OracleKind::pivot_rectangle:
      case OracleKind::pivot_annulus: run_pivot_case(r, oc, grid_size); break;
      case OracleKind::molecular: run_molecular_case(r, oc, grid_size); break;
      case OracleKind::pressure: run_pressure_case(r, oc, grid_size); break;
    }
  } catch (const std::exception& e) {
    r.passed = false;
    r.error = e.what();
  }
  return r;
}

SuiteReport run_oracle_suite(std::size_t grid_size) {
  if (grid_size < 17) throw DimensionTooSmallError("oracle suite needs a grid of at least 17 nodes per side");
  SuiteReport rep;
  rep.grid_size = grid_size;
  for (const auto& name : oracle_names()) {
    rep.results.push_back(run_oracle(get_oracle(name), grid_size));
    rep.all_passed = rep.all_passed && rep.results.back().passed;
  }
  return rep;
}

}  // namespace funsol
