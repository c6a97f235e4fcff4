#include "funsol/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "funsol/error.hpp"

namespace funsol {

namespace {

void check_dims(std::size_t n1, std::size_t n2) {
  if (n1 < 3 || n2 < 3) {
    throw DimensionTooSmallError("grid needs at least 3 nodes per axis, got " + std::to_string(n1) +
                                 "x" + std::to_string(n2));
  }
}

// Axis-1 ends are Dirichlet (they win at corners); axis-2 ends are insulated.
std::vector<NodeTag> edge_tags(std::size_t n1, std::size_t n2) {
  std::vector<NodeTag> tags(n1 * n2, NodeTag::interior);
  for (std::size_t j = 0; j < n2; ++j) {
    for (std::size_t i = 0; i < n1; ++i) {
      NodeTag& t = tags[j * n1 + i];
      if (i == 0) {
        t = NodeTag::gamma1;
      } else if (i == n1 - 1) {
        t = NodeTag::gamma3;
      } else if (j == 0 || j == n2 - 1) {
        t = NodeTag::gamma2;
      }
    }
  }
  return tags;
}

}  // namespace

std::array<double, 2> Grid::position(std::size_t k) const noexcept {
  const double a = axis1(i_of(k));
  const double b = axis2(j_of(k));
  if (coords_ == CoordSystem::polar) return {a * std::cos(b), a * std::sin(b)};
  return {a, b};
}

bool Grid::on_boundary(std::size_t k) const noexcept {
  const std::size_t i = i_of(k), j = j_of(k);
  return i == 0 || j == 0 || i + 1 == n1_ || j + 1 == n2_;
}

Grid build_rectangle(std::size_t n1, std::size_t n2, double width, double height) {
  check_dims(n1, n2);
  if (!(width > 0.0) || !(height > 0.0)) {
    throw InvalidExtentError("rectangle extents must be positive");
  }
  Grid g;
  g.coords_ = CoordSystem::cartesian;
  g.n1_ = n1;
  g.n2_ = n2;
  g.lo1_ = 0.0;
  g.hi1_ = width;
  g.lo2_ = 0.0;
  g.hi2_ = height;
  g.h1_ = width / static_cast<double>(n1 - 1);
  g.h2_ = height / static_cast<double>(n2 - 1);
  g.tags_ = edge_tags(n1, n2);
  return g;
}

Grid build_annulus(std::size_t nr, std::size_t ntheta, double r1, double r2) {
  if (!(r1 > 0.0) || !(r2 > r1)) {
    throw InvalidExtentError("annulus radii must satisfy 0 < r1 < r2");
  }
  check_dims(nr, ntheta);
  Grid g;
  g.coords_ = CoordSystem::polar;
  g.n1_ = nr;
  g.n2_ = ntheta;
  g.lo1_ = r1;
  g.hi1_ = r2;
  g.lo2_ = 0.0;
  g.hi2_ = std::numbers::pi / 2.0;
  g.h1_ = (r2 - r1) / static_cast<double>(nr - 1);
  g.h2_ = g.hi2_ / static_cast<double>(ntheta - 1);
  g.tags_ = edge_tags(nr, ntheta);
  return g;
}

}  // namespace funsol
