#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "funsol/pivot.hpp"
#include "funsol/problem.hpp"
#include "funsol/reconstruct.hpp"

namespace funsol {

enum class OracleKind { pivot_rectangle, pivot_annulus, molecular, pressure };

/// A closed-form test case. Expectations come from hand-derived formulas, never from solver output.
struct OracleCase {
  std::string name;
  std::string summary;
  OracleKind kind = OracleKind::molecular;
  std::optional<ProblemSpec> spec;
  std::string backend;  // fixed_point, shooting or scalar_bisection

  std::optional<std::vector<double>> expected_gamma;
  double gamma_tolerance = 0.0;
  std::function<std::vector<double>(double)> expected_profile;  // U(p) in closed form
  double profile_tolerance = 0.0;

  /// Field-level rule: returns the max violation over the grid.
  std::string field_rule;
  std::function<double(const FieldSet&, const PivotField&)> field_rule_violation;
  double tolerance = 0.0;

  bool expect_singular = false;
  std::optional<std::array<double, 2>> bracket_hints;  // (int r, int q) for the scalar solver
  bool check_direct = false;     // cross-check against the direct coupled solver
  bool check_theta_scaling = false;
  std::vector<double> determinant_points;  // p* values for the shooting determinant check
  std::function<double(double)> expected_determinant;
};

/// Registered names in suite order.
const std::vector<std::string>& oracle_names();

/// Throws UnknownOracleError.
const OracleCase& get_oracle(const std::string& name);

struct OracleCheck {
  std::string quantity;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string relation;  // "abs_diff", "le", "in_range", "flag"
  bool passed = false;
};

struct OracleResult {
  std::string name;
  bool passed = true;
  std::string error;  // non-empty when the pipeline threw unexpectedly
  std::vector<OracleCheck> checks;
  std::shared_ptr<const FieldSet> fields;  // reconstructed fields on the suite grid, if any
  std::shared_ptr<const PivotField> pivot;
};

struct SuiteReport {
  std::size_t grid_size = 0;
  bool all_passed = true;
  std::vector<OracleResult> results;
};

/// Residuals below this are treated as a discretely exact representation; the refinement ratio
/// is only meaningful above it.
inline constexpr double kExactResidualFloor = 1e-7;

/// Profile mesh used for reconstruction on a g x g grid: aligned with both g and 2g-1 lattices.
std::size_t reconstruction_nodes(std::size_t grid_size);

/// Runs every registered case in registration order. Throws DimensionTooSmallError if
/// grid_size < 17; case failures are report entries.
SuiteReport run_oracle_suite(std::size_t grid_size);

/// Runs a single case.
OracleResult run_oracle(const OracleCase& oc, std::size_t grid_size);

}  // namespace funsol
