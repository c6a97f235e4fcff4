#include "funsol/numerics.hpp"

#include <algorithm>
#include <stdexcept>

namespace funsol {

std::vector<double> uniform_mesh(double a, double b, std::size_t n) {
  std::vector<double> mesh(n);
  const double h = (b - a) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) mesh[k] = a + static_cast<double>(k) * h;
  mesh.back() = b;
  return mesh;
}

std::vector<double> cumulative_integral(double h, std::span<const double> f) {
  const std::size_t n = f.size();
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("cumulative_integral needs an odd sample count >= 3");
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 2; k < n; k += 2) {
    out[k] = out[k - 2] + h / 3.0 * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
  }
  // odd nodes: one cubic-interpolation step from the preceding even node
  for (std::size_t k = 1; k < n; k += 2) {
    if (n < 5) {
      out[k] = out[k - 1] + h / 12.0 * (5.0 * f[k - 1] + 8.0 * f[k] - f[k + 1]);
    } else if (k == 1) {
      out[k] = h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
    } else {
      out[k] = out[k - 1] + h / 24.0 * (-f[k - 2] + 13.0 * f[k - 1] + 13.0 * f[k] - f[k + 1]);
    }
  }
  return out;
}

std::vector<double> nodal_derivative(double h, std::span<const double> f) {
  const std::size_t n = f.size();
  if (n < 5) throw std::invalid_argument("nodal_derivative needs at least 5 samples");
  std::vector<double> d(n);
  const double s = 12.0 * h;
  d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / s;
  d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / s;
  for (std::size_t k = 2; k + 2 < n; ++k) {
    d[k] = (f[k - 2] - 8.0 * f[k - 1] + 8.0 * f[k + 1] - f[k + 2]) / s;
  }
  const std::size_t m = n - 1;
  d[m - 1] = (3.0 * f[m] + 10.0 * f[m - 1] - 18.0 * f[m - 2] + 6.0 * f[m - 3] - f[m - 4]) / s;
  d[m] = (25.0 * f[m] - 48.0 * f[m - 1] + 36.0 * f[m - 2] - 16.0 * f[m - 3] + 3.0 * f[m - 4]) / s;
  return d;
}

double interpolate_linear(std::span<const double> mesh, std::span<const double> values, double x) {
  if (x <= mesh.front()) return values.front();
  if (x >= mesh.back()) return values.back();
  const auto it = std::upper_bound(mesh.begin(), mesh.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - mesh.begin()) - 1;
  const double t = (x - mesh[k]) / (mesh[k + 1] - mesh[k]);
  return values[k] + t * (values[k + 1] - values[k]);
}

}  // namespace funsol
