#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "funsol/geometry.hpp"
#include "funsol/pivot.hpp"
#include "funsol/problem.hpp"
#include "funsol/twopoint.hpp"

namespace funsol {

/// Sampled Kirchhoff map Theta(p) = int_0^p b_{n+1}(U(t), t) dt, strictly increasing.
class ThetaMap {
public:
  /// Throws NonPositiveError unless theta_values is strictly increasing and starts at 0.
  ThetaMap(std::vector<double> p_nodes, std::vector<double> theta_values);

  [[nodiscard]] const std::vector<double>& p_nodes() const noexcept { return p_; }
  [[nodiscard]] const std::vector<double>& theta_values() const noexcept { return theta_; }
  [[nodiscard]] double eta_star() const noexcept { return theta_.back(); }

  /// Piecewise-linear Theta(p), clamped to [0, p*].
  [[nodiscard]] double operator()(double p) const;
  /// Inverse of the piecewise-linear map; eta is clamped to [0, eta*].
  [[nodiscard]] double invert(double eta) const;

private:
  std::vector<double> p_;
  std::vector<double> theta_;
};

/// Cumulative integral of b_{n+1} along the solved profiles (darcy and scalar modes).
/// Throws NonPositiveError if b_{n+1} <= 0 at any profile node.
ThetaMap kirchhoff_theta(const ProfileSolution& sol, const ProblemSpec& spec);

/// p(x) = Theta^{-1}(eta* z(x)) at every pivot node.
std::vector<double> pressure_from_pivot(const ThetaMap& theta, const PivotField& pivot);

struct VectorField {
  std::string name;
  std::vector<std::array<double, 2>> values;  // Cartesian components per node
};

struct FieldSet {
  std::shared_ptr<const Grid> grid;
  std::vector<std::vector<double>> u_fields;
  std::optional<std::vector<double>> p_field;
  std::vector<VectorField> fluxes;
};

/// u_i(x) = U_i(z(x)) by piecewise-linear profile evaluation (molecular mode). Dirichlet nodes
/// get 0 / u_i* exactly. Throws RangeError if z leaves the profile mesh by more than 1e-12.
FieldSet compose_fields(const ProfileSolution& sol, const PivotField& pivot, const ProblemSpec& spec);

/// Pressure from the Kirchhoff map, then u_i(x) = U_i(p(x)) (darcy and scalar modes).
FieldSet darcy_reconstruct(const ProfileSolution& sol, const PivotField& pivot, const ProblemSpec& spec);

/// Adds flux fields by centered differences: q_i = sum_j a_ij grad u_j + b_i grad p, and in
/// the pressure modes the velocity v = -b_{n+1} grad p.
void attach_fluxes(FieldSet& fields, const ProblemSpec& spec);

}  // namespace funsol
