#include <gtest/gtest.h>

#include <cmath>

#include "funsol/numerics.hpp"

using namespace funsol;

TEST(Numerics, UniformMeshEndpoints) {
  const auto m = uniform_mesh(0.0, 2.0, 5);
  ASSERT_EQ(m.size(), 5u);
  EXPECT_DOUBLE_EQ(m.front(), 0.0);
  EXPECT_DOUBLE_EQ(m[1], 0.5);
  EXPECT_DOUBLE_EQ(m.back(), 2.0);
}

TEST(Numerics, CumulativeIntegralExactForCubics) {
  const std::size_t n = 11;
  const auto x = uniform_mesh(0.0, 1.0, n);
  std::vector<double> f(n);
  for (std::size_t k = 0; k < n; ++k) f[k] = 1.0 + 2.0 * x[k] - 3.0 * x[k] * x[k] + 4.0 * x[k] * x[k] * x[k];
  const auto F = cumulative_integral(x[1] - x[0], f);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = x[k];
    EXPECT_NEAR(F[k], t + t * t - t * t * t + t * t * t * t, 1e-14) << k;
  }
}

TEST(Numerics, CumulativeIntegralFourthOrder) {
  auto err = [](std::size_t n) {
    const auto x = uniform_mesh(0.0, 1.0, n);
    std::vector<double> f(n);
    for (std::size_t k = 0; k < n; ++k) f[k] = std::exp(x[k]);
    const auto F = cumulative_integral(x[1] - x[0], f);
    double e = 0.0;
    for (std::size_t k = 0; k < n; ++k) e = std::max(e, std::abs(F[k] - (std::exp(x[k]) - 1.0)));
    return e;
  };
  const double ratio = err(21) / err(41);
  EXPECT_GT(ratio, 12.0);
  EXPECT_LT(ratio, 20.0);
}

TEST(Numerics, NodalDerivative) {
  const std::size_t n = 41;
  const auto x = uniform_mesh(0.0, 1.0, n);
  std::vector<double> f(n);
  for (std::size_t k = 0; k < n; ++k) f[k] = std::sin(x[k]);
  const auto d = nodal_derivative(x[1] - x[0], f);
  for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(d[k], std::cos(x[k]), 1e-6) << k;
}

TEST(Numerics, InterpolateLinearClamps) {
  const std::vector<double> m{0.0, 1.0, 2.0}, v{0.0, 10.0, 30.0};
  EXPECT_DOUBLE_EQ(interpolate_linear(m, v, 0.5), 5.0);
  EXPECT_DOUBLE_EQ(interpolate_linear(m, v, 1.5), 20.0);
  EXPECT_DOUBLE_EQ(interpolate_linear(m, v, -1.0), 0.0);
  EXPECT_DOUBLE_EQ(interpolate_linear(m, v, 3.0), 30.0);
}

TEST(Numerics, MakeOdd) {
  EXPECT_EQ(make_odd(4), 5u);
  EXPECT_EQ(make_odd(5), 5u);
}
