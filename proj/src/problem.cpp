#include "funsol/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "funsol/error.hpp"

namespace funsol {

namespace {

constexpr double kSingularCondition = 1e12;

}  // namespace

const char* to_string(Mode m) {
  switch (m) {
    case Mode::molecular: return "molecular";
    case Mode::darcy: return "darcy";
    case Mode::scalar: return "scalar";
  }
  return "?";
}

Mode mode_from_string(const std::string& s) {
  if (s == "molecular") return Mode::molecular;
  if (s == "darcy") return Mode::darcy;
  if (s == "scalar") return Mode::scalar;
  throw ConfigError("unknown mode '" + s + "' (expected molecular, darcy or scalar)");
}

ProblemSpec::ProblemSpec(Mode mode, std::size_t n, std::vector<std::string> a,
                         std::vector<std::string> b, std::optional<std::string> b_next,
                         std::vector<double> u_star, double p_star)
    : mode_(mode), n_(n), u_star_(std::move(u_star)), p_star_(p_star) {
  if (n_ == 0) throw ConfigError("problem size n must be at least 1");
  if (mode_ == Mode::scalar && n_ != 1) throw ConfigError("scalar mode requires n = 1");
  if (a.size() != n_ * n_) {
    throw ConfigError("expected " + std::to_string(n_ * n_) + " coefficients a_ij, got " +
                      std::to_string(a.size()));
  }
  if (!b.empty() && b.size() != n_) {
    throw ConfigError("expected " + std::to_string(n_) + " coefficients b_i, got " +
                      std::to_string(b.size()));
  }
  if (u_star_.size() != n_) {
    throw ConfigError("u_star must have " + std::to_string(n_) + " entries");
  }
  if (!(p_star_ > 0.0)) throw ConfigError("p_star must be positive");
  if (mode_ == Mode::molecular) {
    if (p_star_ != 1.0) throw ConfigError("molecular mode integrates over z in [0,1]; p_star must be 1");
    if (!b.empty() || b_next) throw ConfigError("molecular mode takes no b_i or b_next coefficients");
  }
  if (mode_ == Mode::scalar && !b.empty()) {
    throw ConfigError("scalar mode uses F = b_next / a11; b1 must be absent");
  }

  for (std::size_t i = 1; i <= n_; ++i) vars_.push_back("u" + std::to_string(i));
  vars_.push_back("p");

  auto parse = [&](const std::string& text, const std::string& field) {
    auto e = expr::parse_expression(text, vars_);
    if (mode_ == Mode::molecular) {
      const auto refs = e.referenced_variables();
      if (std::find(refs.begin(), refs.end(), "p") != refs.end()) {
        throw ConfigError(field + ": molecular coefficients depend on u1..un only");
      }
    }
    return e;
  };
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      a_.push_back(parse(a[i * n_ + j], "a" + std::to_string(i + 1) + std::to_string(j + 1)));
    }
  }
  for (std::size_t i = 0; i < b.size(); ++i) b_.push_back(parse(b[i], "b" + std::to_string(i + 1)));
  if (b_next) b_next_ = parse(*b_next, "b_next");
}

std::vector<double> ProblemSpec::pack(std::span<const double> u, double p) const {
  std::vector<double> v(u.begin(), u.end());
  v.push_back(p);
  return v;
}

Eigen::MatrixXd ProblemSpec::matrix_a(std::span<const double> u, double p) const {
  const auto v = pack(u, p);
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = a_[static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j)].evaluate(v);
    }
  }
  return m;
}

Eigen::VectorXd ProblemSpec::vector_b(std::span<const double> u, double p) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
  if (b_.empty()) return out;
  const auto v = pack(u, p);
  for (std::size_t i = 0; i < n_; ++i) out[static_cast<Eigen::Index>(i)] = b_[i].evaluate(v);
  return out;
}

double ProblemSpec::b_next(std::span<const double> u, double p) const {
  if (!b_next_) return 1.0;
  return b_next_->evaluate(pack(u, p));
}

Eigen::VectorXd ProblemSpec::profile_slope(std::span<const double> u, double p,
                                           std::span<const double> gamma) const {
  const Eigen::MatrixXd a = matrix_a(u, p);
  if (condition_estimate(a) > kSingularCondition) {
    throw SingularMatrixError("coefficient matrix A is singular at p = " + std::to_string(p));
  }
  Eigen::VectorXd rhs = -vector_b(u, p);
  const double bn = b_next(u, p);
  for (std::size_t i = 0; i < n_; ++i) rhs[static_cast<Eigen::Index>(i)] += gamma[i] * bn;
  return a.partialPivLu().solve(rhs);
}

ProblemSpec ProblemSpec::with_targets(std::vector<double> u_star, double p_star) const {
  if (u_star.size() != n_) throw ConfigError("u_star must have " + std::to_string(n_) + " entries");
  if (!(p_star > 0.0)) throw ConfigError("p_star must be positive");
  if (mode_ == Mode::molecular && p_star != 1.0) throw ConfigError("molecular mode requires p_star = 1");
  ProblemSpec copy = *this;
  copy.u_star_ = std::move(u_star);
  copy.p_star_ = p_star;
  return copy;
}

Eigen::VectorXd ProblemSpec::target() const {
  return Eigen::Map<const Eigen::VectorXd>(u_star_.data(), static_cast<Eigen::Index>(n_));
}

double condition_estimate(const Eigen::MatrixXd& m) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) return std::numeric_limits<double>::infinity();
  const Eigen::MatrixXd inv = lu.inverse();
  const double norm = m.cwiseAbs().colwise().sum().maxCoeff();
  const double inv_norm = inv.cwiseAbs().colwise().sum().maxCoeff();
  const double kappa = norm * inv_norm;
  return std::isfinite(kappa) ? kappa : std::numeric_limits<double>::infinity();
}

}  // namespace funsol
