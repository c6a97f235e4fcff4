#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "funsol/error.hpp"
#include "funsol/expr.hpp"

using namespace funsol;
using funsol::expr::evaluate;
using funsol::expr::parse_expression;

TEST(Expr, EvaluatesPolynomial) {
  const auto e = parse_expression("1+u1*u1", {"u1"});
  EXPECT_DOUBLE_EQ(evaluate(e, {{"u1", 2.0}}), 5.0);
  const double v[] = {2.0};
  EXPECT_DOUBLE_EQ(e.evaluate(v), 5.0);
}

TEST(Expr, TrigIdentity) {
  const auto e = parse_expression("sin(p)^2+cos(p)^2", {"p"});
  EXPECT_NEAR(evaluate(e, {{"p", 0.7}}), 1.0, 1e-15);
}

TEST(Expr, UnknownVariablePosition) {
  try {
    (void)parse_expression("1+q", {"u1", "p"});
    FAIL() << "expected UnknownVariableError";
  } catch (const UnknownVariableError& e) {
    EXPECT_EQ(e.position(), 3u);
  }
}

TEST(Expr, UnknownFunction) {
  EXPECT_THROW((void)parse_expression("tanh(p)", {"p"}), UnknownFunctionError);
  // a function name without parentheses reads as a variable
  EXPECT_THROW((void)parse_expression("sin p", {"p"}), UnknownVariableError);
}

TEST(Expr, SyntaxErrors) {
  for (const char* bad : {"", "1+", "(p", "p)", "2**3", "1 2", "3.4.5", "u1+,"}) {
    EXPECT_THROW((void)parse_expression(bad, {"u1", "p"}), SyntaxError) << bad;
  }
}

TEST(Expr, Exponential) {
  const auto e = parse_expression("exp(p)", {"p"});
  EXPECT_NEAR(evaluate(e, {{"p", 1.0}}), std::numbers::e, 1e-15);
}

TEST(Expr, DomainErrors) {
  EXPECT_THROW(evaluate(parse_expression("1/(1-p)", {"p"}), {{"p", 1.0}}), DomainError);
  EXPECT_THROW(evaluate(parse_expression("log(p)", {"p"}), {{"p", 0.0}}), DomainError);
  EXPECT_THROW(evaluate(parse_expression("sqrt(p)", {"p"}), {{"p", -1.0}}), DomainError);
}

TEST(Expr, Precedence) {
  EXPECT_DOUBLE_EQ(evaluate(parse_expression("2+3*4^2", {}), {}), 50.0);
  EXPECT_DOUBLE_EQ(evaluate(parse_expression("2^3^2", {}), {}), 512.0);
  EXPECT_DOUBLE_EQ(evaluate(parse_expression("8/4/2", {}), {}), 1.0);
  EXPECT_DOUBLE_EQ(evaluate(parse_expression("-2^2", {}), {}), 4.0);
  EXPECT_DOUBLE_EQ(evaluate(parse_expression("1-2-3", {}), {}), -4.0);
  EXPECT_NEAR(evaluate(parse_expression("2*pi", {}), {}), 2.0 * std::numbers::pi, 1e-15);
  EXPECT_DOUBLE_EQ(evaluate(parse_expression("1.5e1 + abs(-3)", {}), {}), 18.0);
}

TEST(Expr, MissingVariableInEnvironment) {
  EXPECT_THROW(evaluate(parse_expression("u1+p", {"u1", "p"}), {{"u1", 1.0}}), std::out_of_range);
}

TEST(Expr, ReferencedVariables) {
  const auto e = parse_expression("p*u2 + u2 - 3", {"u1", "u2", "p"});
  EXPECT_EQ(e.referenced_variables(), (std::vector<std::string>{"p", "u2"}));
}

// golden values computed by hand
TEST(Expr, GoldenCases) {
  struct Case {
    const char* text;
    double u1, p, expected;
  };
  const Case cases[] = {
      {"1+u1^2+p^2", 2.0, 1.0, 6.0},
      {"(u1+p)*(u1-p)", 3.0, 2.0, 5.0},
      {"exp(-u1)", 0.0, 0.0, 1.0},
      {"sqrt(u1)/p", 9.0, 3.0, 1.0},
      {"log(exp(p))", 0.0, 0.25, 0.25},
      {"-u1 + -p", 1.0, 2.0, -3.0},
      {"u1 / (1 + p) ^ 2", 8.0, 1.0, 2.0},
  };
  for (const auto& c : cases) {
    const auto e = parse_expression(c.text, {"u1", "p"});
    EXPECT_NEAR(evaluate(e, {{"u1", c.u1}, {"p", c.p}}), c.expected, 1e-14) << c.text;
  }
}

TEST(Expr, PrintParseRoundTrip) {
  for (const char* text : {"1+u1*u1", "sin(p)^2+cos(p)^2", "-u1^2", "2^3^2", "a/b/c*(a-b)", "exp(-a)*sqrt(abs(b))",
                           "1.25e-3 - -a", "pi*a"}) {
    const auto e = parse_expression(text, {"a", "b", "c", "u1", "p"});
    const auto again = parse_expression(e.to_string(), {"a", "b", "c", "u1", "p"});
    EXPECT_TRUE(e == again) << text << " -> " << e.to_string();
    EXPECT_EQ(again.to_string(), e.to_string());
  }
}
