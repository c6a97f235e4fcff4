#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace funsol {

enum class CoordSystem { cartesian, polar };

/// Boundary role of a node. gamma1: inflow Dirichlet (value 0), gamma2: insulated
/// (homogeneous Neumann), gamma3: outflow Dirichlet (prescribed target).
enum class NodeTag : unsigned char { interior, gamma1, gamma2, gamma3 };

/// Logically rectangular node lattice on a 2D domain.
///
/// Axis 1 is x (cartesian) or the radius r (polar); axis 2 is y or the angle theta.
/// Nodes are numbered row-major with axis 1 varying fastest: k = j * n1 + i.
/// Immutable after construction.
class Grid {
public:
  [[nodiscard]] CoordSystem coord_system() const noexcept { return coords_; }
  [[nodiscard]] std::size_t n1() const noexcept { return n1_; }
  [[nodiscard]] std::size_t n2() const noexcept { return n2_; }
  [[nodiscard]] std::size_t size() const noexcept { return n1_ * n2_; }
  [[nodiscard]] double h1() const noexcept { return h1_; }
  [[nodiscard]] double h2() const noexcept { return h2_; }
  [[nodiscard]] std::array<double, 2> axis1_range() const noexcept { return {lo1_, hi1_}; }
  [[nodiscard]] std::array<double, 2> axis2_range() const noexcept { return {lo2_, hi2_}; }

  [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * n1_ + i; }
  [[nodiscard]] std::size_t i_of(std::size_t k) const noexcept { return k % n1_; }
  [[nodiscard]] std::size_t j_of(std::size_t k) const noexcept { return k / n1_; }

  /// Axis coordinate values (x or r along axis 1; y or theta along axis 2).
  [[nodiscard]] double axis1(std::size_t i) const noexcept { return lo1_ + static_cast<double>(i) * h1_; }
  [[nodiscard]] double axis2(std::size_t j) const noexcept { return lo2_ + static_cast<double>(j) * h2_; }

  /// Cartesian position of node k.
  [[nodiscard]] std::array<double, 2> position(std::size_t k) const noexcept;

  [[nodiscard]] NodeTag tag(std::size_t k) const noexcept { return tags_[k]; }
  [[nodiscard]] const std::vector<NodeTag>& tags() const noexcept { return tags_; }
  [[nodiscard]] bool is_dirichlet(std::size_t k) const noexcept {
    return tags_[k] == NodeTag::gamma1 || tags_[k] == NodeTag::gamma3;
  }
  /// True for nodes on the lattice's outer ring.
  [[nodiscard]] bool on_boundary(std::size_t k) const noexcept;

  friend Grid build_rectangle(std::size_t, std::size_t, double, double);
  friend Grid build_annulus(std::size_t, std::size_t, double, double);

private:
  Grid() = default;

  CoordSystem coords_ = CoordSystem::cartesian;
  std::size_t n1_ = 0, n2_ = 0;
  double lo1_ = 0, hi1_ = 0, lo2_ = 0, hi2_ = 0;
  double h1_ = 0, h2_ = 0;
  std::vector<NodeTag> tags_;
};

/// [0,width] x [0,height]. Left edge gamma1, right edge gamma3, top and bottom gamma2;
/// corners take the Dirichlet tag. Throws DimensionTooSmallError / InvalidExtentError.
Grid build_rectangle(std::size_t n1, std::size_t n2, double width, double height);

/// Quarter annulus r in [r1,r2], theta in [0, pi/2]. Inner arc gamma1, outer arc gamma3,
/// radial edges gamma2. Throws InvalidExtentError if r1 <= 0 or r2 <= r1.
Grid build_annulus(std::size_t nr, std::size_t ntheta, double r1, double r2);

}  // namespace funsol
