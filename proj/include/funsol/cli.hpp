#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "funsol/error.hpp"
#include "funsol/geometry.hpp"
#include "funsol/problem.hpp"
#include "funsol/reconstruct.hpp"

namespace funsol::cli {

enum ExitCode : int {
  ok = 0,
  usage = 1,
  config = 2,
  solver = 3,
  resonance = 4,
  verification = 5,
};

int exit_code_for(ErrorCategory c);

struct GeometryConfig {
  std::string family = "rectangle";  // rectangle | annulus
  std::size_t n1 = 33, n2 = 33;
  double width = 1.0, height = 1.0;  // rectangle
  double r1 = 1.0, r2 = 2.0;         // annulus
};

struct SolverConfig {
  std::string backend;  // fixed_point | shooting | scalar_bisection
  std::size_t nodes = 0;  // 0: mesh aligned with the grid, see reconstruction_nodes
  double tol = 1e-10;
  std::size_t max_iter = 500;
  double damping = 1.0;
  double pivot_tol = 1e-12;
};

struct OutputConfig {
  std::string directory = "funsol_output";
  bool fields = true;
  bool fluxes = false;
  bool report = true;
};

struct ProblemConfig {
  GeometryConfig geometry;
  std::optional<ProblemSpec> problem;  // always set after load_config
  SolverConfig solver;
  OutputConfig output;
  std::optional<double> residual_tol;  // [verify] residual_tol
};

/// Parses and validates an INI document. Throws ConfigError (naming the offending key) or the
/// expression errors of the coefficient parser.
ProblemConfig parse_config(std::istream& in, const std::string& source_name);
ProblemConfig load_config(const std::filesystem::path& path);

Grid build_grid(const GeometryConfig& g);

/// FUNSOL_OUTPUT_DIR when set, else the fallback.
std::filesystem::path output_directory(const std::string& fallback);

/// Header `x1,x2,value`, one row per node in node order, 17 significant digits.
void write_field_csv(const std::filesystem::path& path, const Grid& grid, const std::vector<double>& values);
std::vector<double> read_field_csv(const std::filesystem::path& path, const Grid& grid);

/// Writes u1..un, p, and (optionally) flux component CSVs into dir.
void write_field_set(const std::filesystem::path& dir, const FieldSet& fields, bool fluxes);

/// Entry point shared by the executable and the tests. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace funsol::cli
