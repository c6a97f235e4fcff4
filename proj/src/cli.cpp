#include "funsol/cli.hpp"

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>

#include "funsol/oracles.hpp"
#include "funsol/pivot.hpp"
#include "funsol/twopoint.hpp"
#include "funsol/verify.hpp"

namespace funsol::cli {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;
using json = nlohmann::ordered_json;

namespace {

const std::map<std::string, std::set<std::string>>& fixed_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"geometry", {"family", "n1", "n2", "width", "height", "r1", "r2"}},
      {"problem", {"mode", "n", "b_next", "u_star", "p_star"}},
      {"solver", {"backend", "nodes", "tol", "max_iter", "damping", "pivot_tol"}},
      {"output", {"directory", "fields", "fluxes", "report"}},
      {"verify", {"residual_tol"}},
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class Section {
public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  [[nodiscard]] std::optional<std::string> raw(const std::string& key) const {
    if (!tree_) return std::nullopt;
    const auto v = tree_->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return trim(*v);
  }

  [[nodiscard]] std::string text(const std::string& key, const std::string& fallback) const {
    return raw(key).value_or(fallback);
  }

  [[nodiscard]] std::optional<double> real(const std::string& key) const {
    const auto v = raw(key);
    if (!v) return std::nullopt;
    return to_real(*v, key);
  }

  [[nodiscard]] std::optional<std::size_t> count(const std::string& key) const {
    const auto v = raw(key);
    if (!v) return std::nullopt;
    std::size_t pos = 0;
    unsigned long long out = 0;
    try {
      if (v->empty() || (*v)[0] == '-') throw std::invalid_argument("negative");
      out = std::stoull(*v, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != v->size()) fail(key, "expected a non-negative integer, got '" + *v + "'");
    return static_cast<std::size_t>(out);
  }

  [[nodiscard]] std::optional<bool> flag(const std::string& key) const {
    const auto v = raw(key);
    if (!v) return std::nullopt;
    if (*v == "true" || *v == "yes" || *v == "1") return true;
    if (*v == "false" || *v == "no" || *v == "0") return false;
    fail(key, "expected true or false, got '" + *v + "'");
  }

  [[nodiscard]] std::vector<double> reals(const std::string& key) const {
    const auto v = raw(key);
    if (!v) fail(key, "is required");
    std::vector<double> out;
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_real(trim(item), key));
    return out;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw ConfigError("[" + name_ + "] " + key + ": " + msg);
  }

private:
  double to_real(const std::string& v, const std::string& key) const {
    std::size_t pos = 0;
    double out = 0.0;
    try {
      out = std::stod(v, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != v.size() || !std::isfinite(out)) fail(key, "expected a number, got '" + v + "'");
    return out;
  }

  const pt::ptree* tree_;
  std::string name_;
};

void check_keys(const pt::ptree& root, std::size_t n) {
  std::set<std::string> coefficients;
  for (std::size_t i = 1; i <= n; ++i) {
    coefficients.insert("b" + std::to_string(i));
    for (std::size_t j = 1; j <= n; ++j) coefficients.insert("a" + std::to_string(i) + std::to_string(j));
  }
  for (const auto& [section, body] : root) {
    const auto it = fixed_keys().find(section);
    if (it == fixed_keys().end()) throw ConfigError("unknown section [" + section + "]");
    for (const auto& [key, value] : body) {
      (void)value;
      if (it->second.count(key)) continue;
      if (section == "problem" && coefficients.count(key)) continue;
      throw ConfigError("[" + section + "] " + key + ": unknown key");
    }
  }
}

std::string coefficient_key(char c, std::size_t i, std::size_t j) {
  return std::string(1, c) + std::to_string(i) + (j ? std::to_string(j) : "");
}

template <class E>
[[noreturn]] void rethrow_keyed(const E& e, const std::string& key) {
  throw E("[problem] " + key + ": " + e.detail(), e.position());
}

void validate_expression(const std::string& text, const std::string& key, const std::vector<std::string>& vars) {
  try {
    (void)expr::parse_expression(text, vars);
  } catch (const UnknownVariableError& e) {
    rethrow_keyed(e, key);
  } catch (const UnknownFunctionError& e) {
    rethrow_keyed(e, key);
  } catch (const SyntaxError& e) {
    rethrow_keyed(e, key);
  }
}

const char* default_backend(Mode m) {
  switch (m) {
    case Mode::molecular: return "fixed_point";
    case Mode::darcy: return "shooting";
    case Mode::scalar: return "scalar_bisection";
  }
  return "";
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
}

void write_json(const fs::path& path, const json& doc) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << doc.dump(2) << '\n';
}

json residual_json(const ResidualReport& r) {
  return json{{"equations", r.equations},
              {"linf", r.per_equation_linf},
              {"l2", r.per_equation_l2},
              {"boundary_max_error", r.boundary_max_error},
              {"grid_spacing", r.grid_spacing}};
}

json geometry_json(const GeometryConfig& g) {
  json j{{"family", g.family}, {"n1", g.n1}, {"n2", g.n2}};
  if (g.family == "rectangle") {
    j["width"] = g.width;
    j["height"] = g.height;
  } else {
    j["r1"] = g.r1;
    j["r2"] = g.r2;
  }
  return j;
}

PivotField pivot_for(const ProblemConfig& cfg, const std::shared_ptr<const Grid>& grid) {
  auto z = solve_pivot(*grid, cfg.solver.pivot_tol);
  z.grid = grid;
  return z;
}

ProfileSolution solve_profiles(const ProblemConfig& cfg) {
  const ProblemSpec& spec = *cfg.problem;
  const SolverConfig& s = cfg.solver;
  const std::size_t nodes =
      s.nodes ? s.nodes : reconstruction_nodes(cfg.geometry.n1);
  if (s.backend == "fixed_point") {
    FixedPointOptions o;
    o.n_nodes = nodes;
    o.tol = s.tol;
    o.max_iter = s.max_iter;
    o.damping = s.damping;
    return solve_fixed_point(spec, o);
  }
  if (s.backend == "shooting") {
    ShootingOptions o;
    o.n_nodes = nodes;
    o.tol = s.tol;
    o.max_newton = s.max_iter;
    return solve_shooting(spec, o);
  }
  ScalarOptions o;
  o.n_nodes = nodes;
  o.tol = s.tol;
  return solve_scalar(spec, std::nullopt, o);
}

int finish_with_residual(const ProblemConfig& cfg, const ResidualReport& rep, std::ostream& err) {
  if (!cfg.residual_tol) return ok;
  for (std::size_t i = 0; i < rep.per_equation_linf.size(); ++i) {
    if (!(rep.per_equation_linf[i] <= *cfg.residual_tol)) {
      err << "verification failed: residual of equation " << rep.equations[i] << " is "
          << fmt(rep.per_equation_linf[i]) << " > " << fmt(*cfg.residual_tol) << '\n';
      return verification;
    }
  }
  return ok;
}

int cmd_pivot(const std::string& config_path, std::ostream& out) {
  const auto cfg = load_config(config_path);
  const auto grid = std::make_shared<const Grid>(build_grid(cfg.geometry));
  const auto z = pivot_for(cfg, grid);
  const fs::path dir = output_directory(cfg.output.directory);
  ensure_dir(dir);
  write_field_csv(dir / "z.csv", *grid, z.values);
  out << "pivot: " << grid->size() << " nodes, residual " << fmt(z.achieved_residual) << ", wrote "
      << (dir / "z.csv").string() << '\n';
  return ok;
}

int cmd_solve(const std::string& config_path, std::ostream& out, std::ostream& err) {
  const auto cfg = load_config(config_path);
  const ProblemSpec& spec = *cfg.problem;
  const auto grid = std::make_shared<const Grid>(build_grid(cfg.geometry));
  const auto z = pivot_for(cfg, grid);
  const auto sol = solve_profiles(cfg);

  FieldSet fields = spec.mode() == Mode::molecular ? compose_fields(sol, z, spec) : darcy_reconstruct(sol, z, spec);
  if (cfg.output.fluxes) attach_fluxes(fields, spec);
  const auto residual = divergence_residual(fields, spec, *grid);

  json report;
  report["command"] = "solve";
  report["mode"] = to_string(spec.mode());
  report["backend"] = cfg.solver.backend;
  report["geometry"] = geometry_json(cfg.geometry);
  report["pivot"] = {{"residual", z.achieved_residual}, {"iterations", z.iterations}};
  json tp{{"gamma", sol.gamma},
          {"two_point_residual", sol.two_point_residual},
          {"boundary_error", sol.boundary_error},
          {"iterations", sol.iterations},
          {"nodes", sol.profiles.mesh.size()}};
  if (cfg.solver.backend == "shooting") tp["jacobian_condition"] = sol.jacobian_condition;
  if (cfg.solver.backend == "fixed_point") {
    double worst = 0.0;
    for (const auto& s : sol.fixed_point_history) worst = std::max(worst, s.bound > 0 ? s.sup_t / s.bound : 0.0);
    tp["iterate_bound_ratio"] = worst;
  }
  report["two_point"] = tp;
  if (spec.mode() == Mode::molecular) {
    report["theta_linearity"] = theta_linearity(sol, spec);
  } else {
    report["eta_star"] = kirchhoff_theta(sol, spec).eta_star();
    std::vector<double> dev(spec.n(), 0.0);
    for (std::size_t i = 0; i < spec.n(); ++i) {
      const double slope = spec.u_star()[i] / spec.p_star();
      for (std::size_t k = 0; k < grid->size(); ++k) {
        dev[i] = std::max(dev[i], std::abs(fields.u_fields[i][k] - slope * (*fields.p_field)[k]));
      }
    }
    report["linear_relation_max_deviation"] = dev;
  }
  report["divergence_residual"] = residual_json(residual);

  const fs::path dir = output_directory(cfg.output.directory);
  ensure_dir(dir);
  json files = json::array();
  if (cfg.output.fields) {
    write_field_csv(dir / "z.csv", *grid, z.values);
    files.push_back("z.csv");
    write_field_set(dir, fields, cfg.output.fluxes);
    for (std::size_t i = 0; i < fields.u_fields.size(); ++i) files.push_back("u" + std::to_string(i + 1) + ".csv");
    if (fields.p_field) files.push_back("p.csv");
    for (const auto& f : fields.fluxes) {
      files.push_back(f.name + "_x.csv");
      files.push_back(f.name + "_y.csv");
    }
  }
  report["files"] = files;
  if (cfg.output.report) write_json(dir / "report.json", report);

  out << "solve: gamma =";
  for (double g : sol.gamma) out << ' ' << fmt(g);
  out << "; max residual";
  for (double r : residual.per_equation_linf) out << ' ' << fmt(r);
  out << '\n';
  return finish_with_residual(cfg, residual, err);
}

int cmd_verify(const std::string& config_path, const std::string& fields_dir, std::ostream& out,
               std::ostream& err) {
  const auto cfg = load_config(config_path);
  const ProblemSpec& spec = *cfg.problem;
  const auto grid = std::make_shared<const Grid>(build_grid(cfg.geometry));
  FieldSet fields;
  fields.grid = grid;
  for (std::size_t i = 0; i < spec.n(); ++i) {
    fields.u_fields.push_back(read_field_csv(fs::path(fields_dir) / ("u" + std::to_string(i + 1) + ".csv"), *grid));
  }
  if (spec.mode() != Mode::molecular) fields.p_field = read_field_csv(fs::path(fields_dir) / "p.csv", *grid);
  const auto residual = divergence_residual(fields, spec, *grid);

  json report;
  report["command"] = "verify";
  report["mode"] = to_string(spec.mode());
  report["geometry"] = geometry_json(cfg.geometry);
  report["divergence_residual"] = residual_json(residual);
  if (cfg.residual_tol) report["residual_tol"] = *cfg.residual_tol;
  const fs::path dir = output_directory(cfg.output.directory);
  ensure_dir(dir);
  if (cfg.output.report) write_json(dir / "verify_report.json", report);

  out << "verify: max residual";
  for (double r : residual.per_equation_linf) out << ' ' << fmt(r);
  out << "; boundary error " << fmt(residual.boundary_max_error) << '\n';
  return finish_with_residual(cfg, residual, err);
}

int cmd_oracle(std::size_t grid_size, std::ostream& out) {
  const auto suite = run_oracle_suite(grid_size);
  const fs::path dir = output_directory("funsol_output");
  ensure_dir(dir);

  json cases = json::array();
  for (const auto& r : suite.results) {
    json checks = json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"quantity", c.quantity},
                        {"measured", c.measured},
                        {"expected", c.expected},
                        {"tolerance", c.tolerance},
                        {"relation", c.relation},
                        {"passed", c.passed}});
    }
    json entry{{"name", r.name}, {"passed", r.passed}};
    if (!r.error.empty()) entry["error"] = r.error;
    entry["checks"] = checks;

    json files = json::array();
    if (r.pivot || r.fields) {
      const fs::path case_dir = dir / r.name;
      ensure_dir(case_dir);
      if (r.pivot) {
        write_field_csv(case_dir / "z.csv", *r.pivot->grid, r.pivot->values);
        files.push_back(r.name + "/z.csv");
      }
      if (r.fields) {
        write_field_set(case_dir, *r.fields, true);
        for (std::size_t i = 0; i < r.fields->u_fields.size(); ++i) {
          files.push_back(r.name + "/u" + std::to_string(i + 1) + ".csv");
        }
        if (r.fields->p_field) files.push_back(r.name + "/p.csv");
        for (const auto& f : r.fields->fluxes) {
          files.push_back(r.name + "/" + f.name + "_x.csv");
          files.push_back(r.name + "/" + f.name + "_y.csv");
        }
      }
    }
    entry["files"] = files;
    cases.push_back(entry);
    out << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.error.empty()) out << " (" << r.error << ")";
    out << '\n';
  }
  json report{{"command", "oracle"}, {"grid_size", suite.grid_size}, {"all_passed", suite.all_passed}, {"cases", cases}};
  write_json(dir / "oracle_report.json", report);
  out << (suite.all_passed ? "all oracle cases passed" : "oracle suite FAILED") << '\n';
  return suite.all_passed ? ok : verification;
}

}  // namespace

int exit_code_for(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::config: return config;
    case ErrorCategory::solver: return solver;
    case ErrorCategory::resonance: return resonance;
    case ErrorCategory::verification: return verification;
  }
  return solver;
}

ProblemConfig parse_config(std::istream& in, const std::string& source_name) {
  pt::ptree root;
  try {
    pt::ini_parser::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source_name + ":" + std::to_string(e.line()) + ": " + e.message());
  }

  auto section = [&](const std::string& name) {
    const auto it = root.find(name);
    return Section(it == root.not_found() ? nullptr : &it->second, name);
  };

  ProblemConfig cfg;
  const Section geo = section("geometry"), prob = section("problem"), solv = section("solver"),
                outp = section("output"), ver = section("verify");

  cfg.geometry.family = geo.text("family", "rectangle");
  if (cfg.geometry.family != "rectangle" && cfg.geometry.family != "annulus") {
    geo.fail("family", "expected rectangle or annulus, got '" + cfg.geometry.family + "'");
  }
  cfg.geometry.n1 = geo.count("n1").value_or(cfg.geometry.n1);
  cfg.geometry.n2 = geo.count("n2").value_or(cfg.geometry.n2);
  cfg.geometry.width = geo.real("width").value_or(cfg.geometry.width);
  cfg.geometry.height = geo.real("height").value_or(cfg.geometry.height);
  cfg.geometry.r1 = geo.real("r1").value_or(cfg.geometry.r1);
  cfg.geometry.r2 = geo.real("r2").value_or(cfg.geometry.r2);

  const auto mode_text = prob.raw("mode");
  if (!mode_text) prob.fail("mode", "is required");
  const Mode mode = mode_from_string(*mode_text);
  const auto n_opt = prob.count("n");
  if (!n_opt || *n_opt == 0) prob.fail("n", "must be a positive integer");
  const std::size_t n = *n_opt;
  check_keys(root, n);

  std::vector<std::string> vars;
  for (std::size_t i = 1; i <= n; ++i) vars.push_back("u" + std::to_string(i));
  vars.push_back("p");

  std::vector<std::string> a;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const std::string key = coefficient_key('a', i, j);
      const auto v = prob.raw(key);
      if (!v) prob.fail(key, "is required for n = " + std::to_string(n));
      validate_expression(*v, key, vars);
      a.push_back(*v);
    }
  }
  std::vector<std::string> b;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::string key = coefficient_key('b', i, 0);
    if (const auto v = prob.raw(key)) {
      validate_expression(*v, key, vars);
      b.push_back(*v);
    }
  }
  if (!b.empty() && b.size() != n) prob.fail("b1", "give all of b1..b" + std::to_string(n) + " or none");
  const auto b_next = prob.raw("b_next");
  if (b_next) validate_expression(*b_next, "b_next", vars);

  const auto u_star = prob.reals("u_star");
  if (u_star.size() != n) prob.fail("u_star", "expected " + std::to_string(n) + " values");
  double p_star = 1.0;
  if (const auto ps = prob.real("p_star")) {
    p_star = *ps;
  } else if (mode != Mode::molecular) {
    prob.fail("p_star", "is required in " + std::string(to_string(mode)) + " mode");
  }
  cfg.problem.emplace(mode, n, a, b, b_next, u_star, p_star);

  cfg.solver.backend = solv.text("backend", default_backend(mode));
  const std::string& be = cfg.solver.backend;
  if (be != "fixed_point" && be != "shooting" && be != "scalar_bisection") {
    solv.fail("backend", "expected fixed_point, shooting or scalar_bisection, got '" + be + "'");
  }
  if (be == "scalar_bisection" && (mode != Mode::scalar || n != 1)) {
    solv.fail("backend", "scalar_bisection requires mode = scalar and n = 1");
  }
  if (be == "fixed_point" && mode != Mode::molecular) solv.fail("backend", "fixed_point requires mode = molecular");
  if (be == "shooting" && mode == Mode::scalar) solv.fail("backend", "shooting does not handle mode = scalar");
  cfg.solver.nodes = solv.count("nodes").value_or(cfg.solver.nodes);
  if (solv.raw("nodes") && cfg.solver.nodes < 5) solv.fail("nodes", "need at least 5 profile nodes");
  cfg.solver.tol = solv.real("tol").value_or(cfg.solver.tol);
  if (!(cfg.solver.tol > 0.0)) solv.fail("tol", "must be positive");
  cfg.solver.max_iter = solv.count("max_iter").value_or(cfg.solver.max_iter);
  if (cfg.solver.max_iter == 0) solv.fail("max_iter", "must be positive");
  cfg.solver.damping = solv.real("damping").value_or(cfg.solver.damping);
  if (!(cfg.solver.damping > 0.0 && cfg.solver.damping <= 1.0)) solv.fail("damping", "must lie in (0, 1]");
  cfg.solver.pivot_tol = solv.real("pivot_tol").value_or(cfg.solver.pivot_tol);
  if (!(cfg.solver.pivot_tol > 0.0)) solv.fail("pivot_tol", "must be positive");

  cfg.output.directory = outp.text("directory", cfg.output.directory);
  cfg.output.fields = outp.flag("fields").value_or(cfg.output.fields);
  cfg.output.fluxes = outp.flag("fluxes").value_or(cfg.output.fluxes);
  cfg.output.report = outp.flag("report").value_or(cfg.output.report);

  cfg.residual_tol = ver.real("residual_tol");
  if (cfg.residual_tol && !(*cfg.residual_tol > 0.0)) ver.fail("residual_tol", "must be positive");
  return cfg;
}

ProblemConfig load_config(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file " + path.string());
  return parse_config(f, path.string());
}

Grid build_grid(const GeometryConfig& g) {
  if (g.family == "annulus") return build_annulus(g.n1, g.n2, g.r1, g.r2);
  return build_rectangle(g.n1, g.n2, g.width, g.height);
}

fs::path output_directory(const std::string& fallback) {
  if (const char* env = std::getenv("FUNSOL_OUTPUT_DIR"); env && *env) return fs::path(env);
  return fs::path(fallback);
}

void write_field_csv(const fs::path& path, const Grid& grid, const std::vector<double>& values) {
  if (values.size() != grid.size()) throw ShapeMismatchError("field length differs from the grid size");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << "x1,x2,value\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto x = grid.position(k);
    f << fmt(x[0]) << ',' << fmt(x[1]) << ',' << fmt(values[k]) << '\n';
  }
}

std::vector<double> read_field_csv(const fs::path& path, const Grid& grid) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open field file " + path.string());
  std::string line;
  if (!std::getline(f, line) || trim(line) != "x1,x2,value") {
    throw ShapeMismatchError(path.string() + ": expected header x1,x2,value");
  }
  std::vector<double> values;
  const double scale = std::max({std::abs(grid.axis1_range()[1]), std::abs(grid.axis2_range()[1]), 1.0});
  while (std::getline(f, line)) {
    if (trim(line).empty()) continue;
    std::array<double, 3> row{};
    std::stringstream ss(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(ss, cell, ',')) {
      if (c >= 3) break;
      char* end = nullptr;
      row[c] = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) throw ShapeMismatchError(path.string() + ": malformed row '" + line + "'");
      ++c;
    }
    if (c != 3) throw ShapeMismatchError(path.string() + ": expected 3 columns in '" + line + "'");
    const std::size_t k = values.size();
    if (k >= grid.size()) throw ShapeMismatchError(path.string() + ": more rows than grid nodes");
    const auto x = grid.position(k);
    if (std::abs(x[0] - row[0]) > 1e-9 * scale || std::abs(x[1] - row[1]) > 1e-9 * scale) {
      throw ShapeMismatchError(path.string() + ": node " + std::to_string(k) + " is not at the grid position");
    }
    values.push_back(row[2]);
  }
  if (values.size() != grid.size()) {
    throw ShapeMismatchError(path.string() + ": " + std::to_string(values.size()) + " rows for " +
                             std::to_string(grid.size()) + " grid nodes");
  }
  return values;
}

void write_field_set(const fs::path& dir, const FieldSet& fields, bool fluxes) {
  const Grid& g = *fields.grid;
  for (std::size_t i = 0; i < fields.u_fields.size(); ++i) {
    write_field_csv(dir / ("u" + std::to_string(i + 1) + ".csv"), g, fields.u_fields[i]);
  }
  if (fields.p_field) write_field_csv(dir / "p.csv", g, *fields.p_field);
  if (!fluxes) return;
  for (const auto& f : fields.fluxes) {
    std::vector<double> x(g.size()), y(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
      x[k] = f.values[k][0];
      y[k] = f.values[k][1];
    }
    write_field_csv(dir / (f.name + "_x.csv"), g, x);
    write_field_csv(dir / (f.name + "_y.csv"), g, y);
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"funsol - functional solutions of coupled divergence-form systems"};
  app.name("funsol");
  app.require_subcommand(1);

  std::string config_path, fields_dir;
  std::size_t grid_size = 33;
  auto* solve = app.add_subcommand("solve", "pivot, two-point problem, reconstruction and verification");
  solve->add_option("config", config_path, "problem configuration (INI)")->required();
  auto* pivot = app.add_subcommand("pivot", "solve the pivot problem and write z only");
  pivot->add_option("config", config_path, "problem configuration (INI)")->required();
  auto* verify = app.add_subcommand("verify", "recompute residuals of previously written fields");
  verify->add_option("config", config_path, "problem configuration (INI)")->required();
  verify->add_option("fields-dir", fields_dir, "directory holding u1.csv.. and p.csv")->required();
  auto* oracle = app.add_subcommand("oracle", "run the closed-form oracle suite");
  oracle->add_option("--grid", grid_size, "grid nodes per side (>= 17)");

  std::vector<std::string> argv_store{"funsol"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : usage;
  }

  try {
    if (*solve) return cmd_solve(config_path, out, err);
    if (*pivot) return cmd_pivot(config_path, out);
    if (*verify) return cmd_verify(config_path, fields_dir, out, err);
    return cmd_oracle(grid_size, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.category());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return solver;
  }
}

}  // namespace funsol::cli
