#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace funsol::expr {

enum class BinaryOp { add, sub, mul, div, pow };
enum class Function { sin, cos, exp, log, sqrt, abs };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// One AST node. Variables are resolved to a slot in the owning expression's variable list.
struct Node {
  enum class Kind { number, variable, negate, binary, call };

  Kind kind = Kind::number;
  double value = 0.0;         // number
  std::size_t slot = 0;       // variable
  std::string name;           // variable
  BinaryOp op = BinaryOp::add;
  Function fn = Function::sin;
  NodePtr lhs;                // negate / call operand, binary left
  NodePtr rhs;                // binary right
};

/// Immutable parsed expression over a fixed, ordered variable set.
///
/// Grammar (whitespace insignificant):
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := unary ('^' factor)?          right-associative
///   unary  := '-'? atom
///   atom   := number | name | name '(' expr ')' | '(' expr ')'
///
/// Note that unary minus binds tighter than '^', so "-x^2" is (-x)^2.
/// The only named constant is "pi".
class Expr {
public:
  Expr() = default;

  /// Evaluates with variable values given in the order of variables().
  [[nodiscard]] double evaluate(std::span<const double> values) const;

  [[nodiscard]] const std::vector<std::string>& variables() const noexcept { return variables_; }
  [[nodiscard]] const Node& root() const { return *root_; }
  [[nodiscard]] bool empty() const noexcept { return root_ == nullptr; }

  /// Names actually referenced by the tree, sorted and unique.
  [[nodiscard]] std::vector<std::string> referenced_variables() const;

  /// Fully parenthesized canonical text; reparsing it yields a structurally equal tree.
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Expr& a, const Expr& b);

private:
  friend Expr parse_expression(std::string_view, std::vector<std::string>);
  Expr(NodePtr root, std::vector<std::string> variables)
      : root_(std::move(root)), variables_(std::move(variables)) {}

  NodePtr root_;
  std::vector<std::string> variables_;
};

/// Throws SyntaxError, UnknownVariableError or UnknownFunctionError with a 1-based position.
Expr parse_expression(std::string_view text, std::vector<std::string> allowed_vars);

/// Name-keyed evaluation. Throws DomainError on log/sqrt/division domain violations
/// and std::out_of_range if a referenced variable is missing from env.
double evaluate(const Expr& e, const std::map<std::string, double>& env);

bool structurally_equal(const Node& a, const Node& b);

}  // namespace funsol::expr
