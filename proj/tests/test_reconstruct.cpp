#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "funsol/error.hpp"
#include "funsol/numerics.hpp"
#include "funsol/reconstruct.hpp"

using namespace funsol;

namespace {

PivotField pivot_on(std::shared_ptr<const Grid> g) {
  auto z = solve_pivot(*g, 1e-12);
  z.grid = std::move(g);
  return z;
}

std::shared_ptr<const Grid> square(std::size_t n) {
  return std::make_shared<const Grid>(build_rectangle(n, n, 1.0, 1.0));
}

ProfileSolution tabulated(std::size_t n, double p_star, const std::vector<std::function<double(double)>>& f,
                          std::vector<double> gamma) {
  ProfileSolution s;
  s.profiles.mesh = uniform_mesh(0.0, p_star, n);
  for (const auto& fi : f) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = fi(s.profiles.mesh[k]);
    s.profiles.values.push_back(v);
  }
  s.gamma = std::move(gamma);
  return s;
}

}  // namespace

TEST(Compose, LinearProfiles) {
  const ProblemSpec s(Mode::molecular, 2, {"1", "0", "0", "1"}, {}, std::nullopt, {2.0, -1.0}, 1.0);
  const auto g = square(9);
  const auto z = pivot_on(g);
  const auto f = compose_fields(tabulated(17, 1.0, {[](double t) { return 2.0 * t; }, [](double t) { return -t; }},
                                          {2.0, -1.0}),
                                z, s);
  for (std::size_t k = 0; k < g->size(); ++k) {
    EXPECT_NEAR(f.u_fields[0][k], 2.0 * g->position(k)[0], 1e-12);
    EXPECT_NEAR(f.u_fields[1][k], -g->position(k)[0], 1e-12);
    if (g->tag(k) == NodeTag::gamma3) {
      EXPECT_EQ(f.u_fields[0][k], 2.0);
    }
  }
  EXPECT_FALSE(f.p_field.has_value());
}

TEST(Compose, SqrtProfile) {
  const ProblemSpec s(Mode::molecular, 2, {"1+u1", "0", "0", "1"}, {}, std::nullopt, {1.0, 0.0}, 1.0);
  const auto g = square(33);
  const auto z = pivot_on(g);
  const auto f = compose_fields(
      tabulated(4097, 1.0, {[](double t) { return -1.0 + std::sqrt(1.0 + 3.0 * t); }, [](double) { return 0.0; }},
                {1.5, 0.0}),
      z, s);
  EXPECT_NEAR(f.u_fields[0][g->index(16, 7)], -1.0 + std::sqrt(2.5), 1e-6);
  EXPECT_NEAR(f.u_fields[0][g->index(16, 7)], 0.58114, 1e-5);
}

TEST(Compose, RejectsShortProfileMesh) {
  const ProblemSpec s(Mode::molecular, 1, {"1"}, {}, std::nullopt, {1.0}, 1.0);
  const auto z = pivot_on(square(9));
  EXPECT_THROW((void)compose_fields(tabulated(5, 0.5, {[](double t) { return t; }}, {1.0}), z, s), RangeError);
}

TEST(Theta, UnitIntegrand) {
  const ProblemSpec s(Mode::darcy, 1, {"1"}, {}, std::nullopt, {1.5}, 1.5);
  const auto th = kirchhoff_theta(tabulated(101, 1.5, {[](double p) { return p; }}, {1.0}), s);
  EXPECT_NEAR(th.eta_star(), 1.5, 1e-14);
  EXPECT_NEAR(th(0.3), 0.3, 1e-14);
}

TEST(Theta, ExponentialIntegrand) {
  const ProblemSpec s(Mode::scalar, 1, {"exp(p)"}, {}, std::string("exp(p)"), {1.0}, 1.0);
  const auto th = kirchhoff_theta(tabulated(1001, 1.0, {[](double p) { return p; }}, {1.0}), s);
  EXPECT_NEAR(th.eta_star(), std::numbers::e - 1.0, 1e-12);
  EXPECT_NEAR(th(0.5), std::exp(0.5) - 1.0, 1e-7);
  EXPECT_NEAR(th.invert(th(0.37)), 0.37, 1e-12);
}

TEST(Theta, RejectsDecreasingValues) {
  EXPECT_THROW(ThetaMap({0.0, 0.5, 1.0}, {0.0, 0.4, 0.3}), NonPositiveError);
  EXPECT_THROW(ThetaMap({0.0, 0.5, 1.0}, {0.1, 0.4, 0.5}), NonPositiveError);
}

TEST(Theta, RejectsNonPositiveBNext) {
  const ProblemSpec s(Mode::darcy, 1, {"1"}, {}, std::string("0.5-p"), {1.0}, 1.0);
  EXPECT_THROW((void)kirchhoff_theta(tabulated(11, 1.0, {[](double p) { return p; }}, {1.0}), s), NonPositiveError);
}

TEST(Pressure, UnitIntegrandScalesPivot) {
  const auto g = square(17);
  const auto z = pivot_on(g);
  const ThetaMap th({0.0, 1.0, 2.0}, {0.0, 1.0, 2.0});
  const auto p = pressure_from_pivot(th, z);
  for (std::size_t k = 0; k < g->size(); ++k) EXPECT_NEAR(p[k], 2.0 * z.values[k], 1e-12);
}

TEST(Pressure, ExponentialKirchhoff) {
  const ProblemSpec s(Mode::darcy, 1, {"1"}, {}, std::string("exp(p)"), {1.0}, 1.0);
  const auto g = square(33);
  const auto z = pivot_on(g);
  const auto f = darcy_reconstruct(tabulated(16001, 1.0, {[](double p) { return p; }}, {1.0}), z, s);
  const auto& p = *f.p_field;
  for (std::size_t k = 0; k < g->size(); ++k) {
    EXPECT_NEAR(p[k], std::log1p((std::numbers::e - 1.0) * z.values[k]), 1e-7);
    if (g->tag(k) == NodeTag::gamma1) {
      EXPECT_EQ(p[k], 0.0);
    }
    if (g->tag(k) == NodeTag::gamma3) {
      EXPECT_EQ(p[k], 1.0);
    }
  }
  EXPECT_NEAR(p[g->index(16, 3)], 0.62012, 1e-5);
}

TEST(Darcy, LinearCase) {
  const ProblemSpec s(Mode::darcy, 2, {"1", "0", "0", "1"}, {}, std::nullopt, {3.0, 1.0}, 2.0);
  const auto g = square(9);
  const auto z = pivot_on(g);
  const auto f = darcy_reconstruct(
      tabulated(101, 2.0, {[](double p) { return 1.5 * p; }, [](double p) { return 0.5 * p; }}, {1.5, 0.5}), z, s);
  for (std::size_t k = 0; k < g->size(); ++k) {
    EXPECT_NEAR(f.u_fields[0][k], 3.0 * z.values[k], 1e-12);
    EXPECT_NEAR(f.u_fields[1][k], 1.0 * z.values[k], 1e-12);
  }
}

TEST(Fluxes, LinearFieldsGiveConstantFluxes) {
  const ProblemSpec s(Mode::darcy, 1, {"2"}, {"1"}, std::string("3"), {2.0}, 1.0);
  const auto g = square(9);
  const auto z = pivot_on(g);
  auto f = darcy_reconstruct(tabulated(101, 1.0, {[](double p) { return 2.0 * p; }}, {1.0}), z, s);
  attach_fluxes(f, s);
  ASSERT_EQ(f.fluxes.size(), 2u);
  EXPECT_EQ(f.fluxes[0].name, "q1");
  EXPECT_EQ(f.fluxes[1].name, "v");
  for (std::size_t k = 0; k < g->size(); ++k) {
    // q1 = 2 * grad(2x) + 1 * grad(x) = (5, 0), v = -3 grad(x)
    EXPECT_NEAR(f.fluxes[0].values[k][0], 5.0, 1e-10);
    EXPECT_NEAR(f.fluxes[0].values[k][1], 0.0, 1e-10);
    EXPECT_NEAR(f.fluxes[1].values[k][0], -3.0, 1e-10);
  }
}
