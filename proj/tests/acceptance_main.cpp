// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "funsol/cli.hpp"
#include "funsol/error.hpp"
#include "funsol/oracles.hpp"
#include "funsol/pivot.hpp"
#include "funsol/twopoint.hpp"
#include "funsol/verify.hpp"

using namespace funsol;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    passed = passed && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [x]");
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

PivotField pivot_on(std::shared_ptr<const Grid> g) {
  auto z = solve_pivot(*g, 1e-12);
  z.grid = std::move(g);
  return z;
}

std::shared_ptr<const Grid> square(std::size_t n) {
  return std::make_shared<const Grid>(build_rectangle(n, n, 1.0, 1.0));
}

std::vector<const OracleCase*> molecular_oracles() {
  std::vector<const OracleCase*> out;
  for (const auto& n : oracle_names()) {
    const auto& oc = get_oracle(n);
    if (oc.kind == OracleKind::molecular) out.push_back(&oc);
  }
  return out;
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

const SuiteReport& suite33() {
  static const SuiteReport rep = run_oracle_suite(33);
  return rep;
}

Outcome pivot_exactness() {
  Outcome o;
  const auto rect = pivot_on(square(65));
  double e = 0.0;
  for (std::size_t k = 0; k < rect.grid->size(); ++k) e = std::max(e, std::abs(rect.values[k] - rect.grid->position(k)[0]));
  o.require(e <= 1e-10, "65x65 square max|z-x| = " + num(e));

  auto annulus_error = [](std::size_t n) {
    const auto z = pivot_on(std::make_shared<const Grid>(build_annulus(n, n, 1.0, 2.0)));
    double err = 0.0;
    for (std::size_t k = 0; k < z.grid->size(); ++k) {
      err = std::max(err, std::abs(z.values[k] - std::log(z.grid->axis1(z.grid->i_of(k))) / std::log(2.0)));
    }
    return err;
  };
  // 64 nodes per side; doubling the resolution halves the spacing, which needs 127 nodes
  const double coarse = annulus_error(64), fine = annulus_error(127);
  o.require(coarse <= 5e-3, "64x64 annulus error = " + num(coarse));
  const double ratio = coarse / fine;
  o.require(ratio >= 3.0 && ratio <= 5.0, "ratio 64->127 = " + num(ratio));
  return o;
}

Outcome fixed_point_diag() {
  Outcome o;
  const auto& spec = *get_oracle("diag_nonlinear_molecular").spec;
  FixedPointOptions fo;
  fo.n_nodes = 1001;
  const auto sol = solve_fixed_point(spec, fo);
  const double dg = std::abs(sol.gamma[0] - 1.5);
  double du = 0.0;
  for (std::size_t k = 0; k < sol.profiles.mesh.size(); ++k) {
    du = std::max(du, std::abs(sol.profiles.values[0][k] - (-1.0 + std::sqrt(1.0 + 3.0 * sol.profiles.mesh[k]))));
  }
  o.require(dg <= 1e-8, "|gamma1-1.5| = " + num(dg));
  o.require(du <= 1e-7, "sup|U1-exact| = " + num(du));
  return o;
}

Outcome shooting_sincos() {
  Outcome o;
  const auto& regular = *get_oracle("sincos_regular").spec;
  const auto sol = solve_shooting(regular);
  const double g = std::max(std::abs(sol.gamma[0]), std::abs(sol.gamma[1]));
  o.require(g <= 1e-10, "p*=pi |gamma| = " + num(g));

  bool singular = false;
  try {
    (void)solve_shooting(regular.with_targets({0.0, 0.0}, 2.0 * kPi));
  } catch (const SingularJacobianError&) {
    singular = true;
  }
  o.require(singular, std::string("p*=2pi singular Jacobian ") + (singular ? "raised" : "not raised"));

  double worst = 0.0;
  for (double ps : {kPi / 2.0, kPi, 1.5 * kPi}) {
    const double det = shooting_jacobian(regular.with_targets({0.0, 0.0}, ps), {0.0, 0.0}, 1001).determinant();
    worst = std::max(worst, std::abs(det - 2.0 * (1.0 - std::cos(ps))));
  }
  o.require(worst <= 1e-8, "max determinant error = " + num(worst));
  return o;
}

Outcome backend_agreement() {
  Outcome o;
  for (const auto* oc : molecular_oracles()) {
    const auto a = solve_fixed_point(*oc->spec);
    const auto b = solve_shooting(*oc->spec);
    double scale = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < a.gamma.size(); ++i) {
      scale = std::max(scale, std::abs(a.gamma[i]));
      diff = std::max(diff, std::abs(a.gamma[i] - b.gamma[i]));
    }
    const double rel = scale > 0.0 ? diff / scale : diff;
    o.require(rel <= 1e-6, oc->name + " " + num(rel));
  }
  return o;
}

Outcome iterate_bound() {
  Outcome o;
  std::size_t steps = 0;
  double worst = 0.0;
  for (const auto* oc : molecular_oracles()) {
    for (double tol : {1e-6, 1e-8, 1e-10}) {
      for (double damping : {1.0, 0.4}) {
        FixedPointOptions fo;
        fo.tol = tol;
        fo.damping = damping;
        for (const auto& s : solve_fixed_point(*oc->spec, fo).fixed_point_history) {
          ++steps;
          worst = std::max(worst, s.bound > 0.0 ? s.sup_t / s.bound : (s.sup_t > 0.0 ? 2.0 : 0.0));
        }
      }
    }
  }
  o.require(worst <= 1.0 + 1e-12, "max sup|T[U]|/((M/m)|u*|) = " + num(worst) + " over " + std::to_string(steps) + " iterates");
  return o;
}

Outcome equal_coef_end_to_end() {
  Outcome o;
  const auto& oc = get_oracle("equal_coef_scalar");
  const auto& spec = *oc.spec;
  const auto g = square(33);
  const auto z = pivot_on(g);
  ScalarOptions so;
  so.n_nodes = reconstruction_nodes(33);
  so.tol = 1e-12;
  const auto functional = darcy_reconstruct(solve_scalar(spec, std::nullopt, so), z, spec);
  const auto direct = direct_coupled_solve(spec, g);
  auto rule = [](const FieldSet& f) {
    double m = 0.0;
    for (std::size_t k = 0; k < f.u_fields[0].size(); ++k) m = std::max(m, std::abs(f.u_fields[0][k] - 2.0 * (*f.p_field)[k]));
    return m;
  };
  const double rf = rule(functional), rd = rule(direct.fields);
  const double cross = compare_fields(functional, direct.fields).linf;
  o.require(rf <= 1e-6, "functional max|u-2p| = " + num(rf));
  o.require(rd <= 1e-6, "direct max|u-2p| = " + num(rd));
  o.require(cross <= 1e-6, "cross-method Linf = " + num(cross));
  return o;
}

Outcome theta_linearity_check() {
  Outcome o;
  for (const auto* oc : molecular_oracles()) {
    FixedPointOptions fo;
    fo.tol = 1e-8;
    const double dev = max_of(theta_linearity(solve_fixed_point(*oc->spec, fo), *oc->spec));
    o.require(dev <= 1e-6, oc->name + " dev@1e-8 = " + num(dev));
    if (!oc->check_theta_scaling) continue;
    double d[2];
    for (int i = 0; i < 2; ++i) {
      FixedPointOptions fs;
      fs.tol = i == 0 ? 1e-6 : 1e-8;
      fs.damping = 0.4;
      d[i] = max_of(theta_linearity(solve_fixed_point(*oc->spec, fs), *oc->spec));
    }
    const double ratio = d[0] / d[1];
    o.require(ratio >= 50.0 && ratio <= 200.0, oc->name + " scaling = " + num(ratio));
  }
  return o;
}

Outcome kirchhoff_reconstruction() {
  Outcome o;
  const auto& spec = *get_oracle("kirchhoff_exp").spec;
  const auto g = square(33);
  const auto z = pivot_on(g);
  ScalarOptions so;
  so.n_nodes = reconstruction_nodes(33);
  const auto sol = solve_scalar(spec, std::nullopt, so);
  const auto fields = darcy_reconstruct(sol, z, spec);
  double e = 0.0;
  for (std::size_t k = 0; k < g->size(); ++k) {
    e = std::max(e, std::abs((*fields.p_field)[k] - std::log1p((kE - 1.0) * z.values[k])));
  }
  o.require(e <= 1e-6, "max|p - ln(1+(e-1)z)| = " + num(e));

  const ThetaMap theta = kirchhoff_theta(sol, spec);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pick(0.0, spec.p_star());
  double rt = 0.0;
  for (int s = 0; s < 100; ++s) {
    const double p = pick(rng);
    rt = std::max(rt, std::abs(theta.invert(theta(p)) - p));
  }
  o.require(rt <= 1e-10, "theta round trip = " + num(rt));
  return o;
}

Outcome residual_convergence() {
  Outcome o;
  const auto& rep = suite33();
  std::size_t fieldsets = 0;
  for (const auto& r : rep.results) {
    bool any = false;
    for (const auto& c : r.checks) {
      const bool ratio = c.quantity.rfind("residual_ratio_", 0) == 0;
      const bool exact = c.quantity.rfind("residual_exact_", 0) == 0;
      if (!ratio && !exact) continue;
      any = true;
      o.require(c.passed, r.name + "." + c.quantity.substr(15) + (ratio ? " ratio " : " exact ") + num(c.measured));
    }
    if (any) ++fieldsets;
    if (!r.error.empty()) o.require(false, r.name + " error: " + r.error);
  }
  o.require(fieldsets > 0, std::to_string(fieldsets) + " reconstructed field sets");
  return o;
}

Outcome scalar_bracket() {
  Outcome o;
  const auto& oc = get_oracle("scalar_exp_decay");
  const auto& spec = *oc.spec;
  const double u = spec.u_star()[0], ps = spec.p_star();
  const double int_q = 1.0 * ps, int_r = std::exp(-u) * ps;  // q = 1, r = exp(-u*max)
  const auto sol = solve_scalar(spec, ScalarBracketHints{int_r, int_q});
  const double g = sol.gamma[0];
  o.require(std::abs(g - (kE - 1.0)) <= 1e-8, "|gamma-(e-1)| = " + num(std::abs(g - (kE - 1.0))));
  const double lo = u / int_q, hi = u / int_r;
  o.require(g >= lo && g <= hi, "gamma in [" + num(lo) + ", " + num(hi) + "]");
  return o;
}

std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream f(e.path(), std::ios::binary);
    files[fs::relative(e.path(), root).generic_string()] = std::string(std::istreambuf_iterator<char>(f), {});
  }
  return files;
}

Outcome determinism() {
  Outcome o;
  const fs::path base = fs::temp_directory_path() / "funsol_acceptance_determinism";
  fs::remove_all(base);
  std::map<std::string, std::string> snaps[2];
  int codes[2];
  for (int i = 0; i < 2; ++i) {
    const fs::path dir = base / ("run" + std::to_string(i));
    ::setenv("FUNSOL_OUTPUT_DIR", dir.c_str(), 1);
    std::ostringstream out, err;
    codes[i] = cli::run({"oracle", "--grid", "33"}, out, err);
    snaps[i] = snapshot(dir);
  }
  ::unsetenv("FUNSOL_OUTPUT_DIR");
  fs::remove_all(base);
  o.require(codes[0] == 0 && codes[1] == 0, "exit codes " + std::to_string(codes[0]) + ", " + std::to_string(codes[1]));
  std::size_t csv = 0;
  for (const auto& [name, body] : snaps[0]) csv += name.size() > 4 && name.substr(name.size() - 4) == ".csv";
  o.require(snaps[0].count("oracle_report.json") == 1 && csv > 0,
            std::to_string(snaps[0].size()) + " files (" + std::to_string(csv) + " csv)");
  o.require(snaps[0] == snaps[1], snaps[0] == snaps[1] ? "byte-identical" : "outputs differ");
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"pivot exactness", pivot_exactness},
      {"fixed-point solver", fixed_point_diag},
      {"shooting solver", shooting_sincos},
      {"backend agreement", backend_agreement},
      {"iterate bound", iterate_bound},
      {"scalar a = b end-to-end", equal_coef_end_to_end},
      {"theta linearity", theta_linearity_check},
      {"Kirchhoff reconstruction", kirchhoff_reconstruction},
      {"divergence residual convergence", residual_convergence},
      {"scalar solver bracket", scalar_bracket},
      {"determinism", determinism},
  };
  int failed = 0, index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.passed;
    std::cout << (o.passed ? "PASS" : "FAIL") << "  " << index << ". " << name << ": " << o.detail << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
