#include "funsol/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

#include "funsol/error.hpp"

namespace funsol::expr {

namespace {

struct FunctionName {
  std::string_view name;
  Function fn;
};

constexpr FunctionName kFunctions[] = {
    {"sin", Function::sin}, {"cos", Function::cos},   {"exp", Function::exp},
    {"log", Function::log}, {"sqrt", Function::sqrt}, {"abs", Function::abs},
};

std::string_view function_name(Function fn) {
  for (const auto& f : kFunctions) {
    if (f.fn == fn) return f.name;
  }
  return "?";
}

char op_char(BinaryOp op) {
  switch (op) {
    case BinaryOp::add: return '+';
    case BinaryOp::sub: return '-';
    case BinaryOp::mul: return '*';
    case BinaryOp::div: return '/';
    case BinaryOp::pow: return '^';
  }
  return '?';
}

NodePtr make_number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::number;
  n->value = v;
  return n;
}

NodePtr make_binary(BinaryOp op, NodePtr l, NodePtr r) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::binary;
  n->op = op;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

class Parser {
public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  NodePtr parse() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("empty expression", pos_ + 1);
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ < text_.size()) {
      throw SyntaxError(std::string("unexpected character '") + text_[pos_] + "'", pos_ + 1);
    }
    return e;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) {
        throw SyntaxError(std::string("expected '") + c + "' but reached end of input", pos_ + 1);
      }
      throw SyntaxError(std::string("expected '") + c + "'", pos_ + 1);
    }
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(BinaryOp::add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = make_binary(BinaryOp::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(BinaryOp::mul, lhs, parse_factor());
      } else if (accept('/')) {
        lhs = make_binary(BinaryOp::div, lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_factor() {
    NodePtr base = parse_unary();
    if (accept('^')) return make_binary(BinaryOp::pow, base, parse_factor());
    return base;
  }

  NodePtr parse_unary() {
    if (accept('-')) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::negate;
      n->lhs = parse_atom();
      return n;
    }
    return parse_atom();
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_ + 1);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_ + 1);
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw SyntaxError("malformed number", start + 1);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw SyntaxError("malformed exponent", start + 1);
    }
    const std::string literal(text_.substr(start, pos_ - start));
    const double v = std::strtod(literal.c_str(), nullptr);
    if (!std::isfinite(v)) throw SyntaxError("number literal out of range", start + 1);
    return make_number(v);
  }

  NodePtr parse_name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      const auto it = std::find_if(std::begin(kFunctions), std::end(kFunctions),
                                   [&](const FunctionName& f) { return f.name == name; });
      if (it == std::end(kFunctions)) {
        throw UnknownFunctionError("unknown function '" + name + "'", start + 1);
      }
      ++pos_;
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::call;
      n->fn = it->fn;
      n->lhs = parse_expr();
      expect(')');
      return n;
    }
    const auto var = std::find(vars_.begin(), vars_.end(), name);
    if (var != vars_.end()) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::variable;
      n->slot = static_cast<std::size_t>(var - vars_.begin());
      n->name = name;
      return n;
    }
    if (name == "pi") return make_number(std::numbers::pi);
    throw UnknownVariableError("unknown variable '" + name + "'", start + 1);
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

double eval_node(const Node& n, std::span<const double> values) {
  switch (n.kind) {
    case Node::Kind::number:
      return n.value;
    case Node::Kind::variable:
      return values[n.slot];
    case Node::Kind::negate:
      return -eval_node(*n.lhs, values);
    case Node::Kind::binary: {
      const double a = eval_node(*n.lhs, values);
      const double b = eval_node(*n.rhs, values);
      double r = 0.0;
      switch (n.op) {
        case BinaryOp::add: r = a + b; break;
        case BinaryOp::sub: r = a - b; break;
        case BinaryOp::mul: r = a * b; break;
        case BinaryOp::div:
          if (b == 0.0) throw DomainError("division by zero");
          r = a / b;
          break;
        case BinaryOp::pow: r = std::pow(a, b); break;
      }
      if (!std::isfinite(r)) throw DomainError("non-finite result of '" + std::string(1, op_char(n.op)) + "'");
      return r;
    }
    case Node::Kind::call: {
      const double x = eval_node(*n.lhs, values);
      switch (n.fn) {
        case Function::sin: return std::sin(x);
        case Function::cos: return std::cos(x);
        case Function::exp: {
          const double r = std::exp(x);
          if (!std::isfinite(r)) throw DomainError("exp overflow");
          return r;
        }
        case Function::log:
          if (!(x > 0.0)) throw DomainError("log of non-positive argument");
          return std::log(x);
        case Function::sqrt:
          if (x < 0.0) throw DomainError("sqrt of negative argument");
          return std::sqrt(x);
        case Function::abs: return std::abs(x);
      }
    }
  }
  return 0.0;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void render(const Node& n, std::string& out) {
  switch (n.kind) {
    case Node::Kind::number:
      out += format_number(n.value);
      return;
    case Node::Kind::variable:
      out += n.name;
      return;
    case Node::Kind::negate: {
      out += '-';
      const bool atomic = n.lhs->kind == Node::Kind::number || n.lhs->kind == Node::Kind::variable ||
                          n.lhs->kind == Node::Kind::call;
      if (!atomic) out += '(';
      render(*n.lhs, out);
      if (!atomic) out += ')';
      return;
    }
    case Node::Kind::binary:
      out += '(';
      render(*n.lhs, out);
      out += ' ';
      out += op_char(n.op);
      out += ' ';
      render(*n.rhs, out);
      out += ')';
      return;
    case Node::Kind::call:
      out += function_name(n.fn);
      out += '(';
      render(*n.lhs, out);
      out += ')';
      return;
  }
}

void collect(const Node& n, std::set<std::string>& names) {
  if (n.kind == Node::Kind::variable) names.insert(n.name);
  if (n.lhs) collect(*n.lhs, names);
  if (n.rhs) collect(*n.rhs, names);
}

}  // namespace

Expr parse_expression(std::string_view text, std::vector<std::string> allowed_vars) {
  Parser parser(text, allowed_vars);
  NodePtr root = parser.parse();
  return Expr(std::move(root), std::move(allowed_vars));
}

double Expr::evaluate(std::span<const double> values) const {
  return eval_node(*root_, values);
}

std::vector<std::string> Expr::referenced_variables() const {
  std::set<std::string> names;
  if (root_) collect(*root_, names);
  return {names.begin(), names.end()};
}

std::string Expr::to_string() const {
  std::string out;
  if (root_) render(*root_, out);
  return out;
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Node::Kind::number:
      return a.value == b.value;
    case Node::Kind::variable:
      return a.name == b.name;
    case Node::Kind::negate:
      return structurally_equal(*a.lhs, *b.lhs);
    case Node::Kind::binary:
      return a.op == b.op && structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
    case Node::Kind::call:
      return a.fn == b.fn && structurally_equal(*a.lhs, *b.lhs);
  }
  return false;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.root_ == nullptr || b.root_ == nullptr) return a.root_ == b.root_;
  return structurally_equal(*a.root_, *b.root_);
}

double evaluate(const Expr& e, const std::map<std::string, double>& env) {
  std::vector<double> values(e.variables().size(), 0.0);
  for (const auto& name : e.referenced_variables()) {
    const auto& vars = e.variables();
    const auto slot = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), name) - vars.begin());
    values[slot] = env.at(name);
  }
  return e.evaluate(values);
}

}  // namespace funsol::expr
