#pragma once

#include <span>
#include <vector>

namespace funsol {

/// N equally spaced points from a to b inclusive.
std::vector<double> uniform_mesh(double a, double b, std::size_t n);

/// Running integral of uniformly sampled f, fourth order at every node: composite Simpson up
/// to even nodes, plus one cubic-interpolation step for the last interval at odd nodes.
/// Requires an odd number of samples >= 3.
std::vector<double> cumulative_integral(double h, std::span<const double> f);

/// Fourth-order finite-difference derivative of uniformly sampled f at every node
/// (central five-point in the interior, one-sided five-point at the ends). Needs >= 5 samples.
std::vector<double> nodal_derivative(double h, std::span<const double> f);

/// Piecewise-linear interpolation on a strictly increasing mesh; clamps to the end values
/// outside the mesh.
double interpolate_linear(std::span<const double> mesh, std::span<const double> values, double x);

/// Smallest odd integer >= n.
inline std::size_t make_odd(std::size_t n) { return n % 2 == 1 ? n : n + 1; }

}  // namespace funsol
