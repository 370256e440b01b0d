#ifndef GARO_CONIC_PROGRAM_HPP
#define GARO_CONIC_PROGRAM_HPP

#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "garo/core.hpp"

namespace garo {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LinearConstraint {
  Vector coeffs;
  Relation rel = Relation::LessEqual;
  double rhs = 0.0;
};

/// Second-order cone constraint ||A v + b||_2 <= c' v + d.
struct SocConstraint {
  Matrix A;
  Vector b;
  Vector c;
  double d = 0.0;
};

/// Linear objective subject to linear rows, SOC rows and variable bounds.
class ConicProgram {
public:
  explicit ConicProgram(int num_vars)
      : num_vars_(num_vars),
        objective_(Vector::Zero(num_vars)),
        lower_(Vector::Constant(num_vars, -kInf)),
        upper_(Vector::Constant(num_vars, kInf)) {
    if (num_vars < 1) throw std::invalid_argument("ConicProgram: num_vars must be positive");
  }

  int num_vars() const { return num_vars_; }

  void set_objective(const Vector& c) {
    check_dim(c.size(), "objective");
    objective_ = c;
  }
  const Vector& objective() const { return objective_; }

  void set_bounds(int i, double lo, double hi) {
    if (i < 0 || i >= num_vars_) throw std::invalid_argument("ConicProgram: bad variable index");
    if (lo > hi) throw std::invalid_argument("ConicProgram: lo > hi");
    lower_[i] = lo;
    upper_[i] = hi;
  }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

  void add_linear(const Vector& coeffs, Relation rel, double rhs) {
    check_dim(coeffs.size(), "linear constraint");
    linear_.push_back({coeffs, rel, rhs});
  }

  void add_soc(const Matrix& A, const Vector& b, const Vector& c, double d) {
    check_dim(A.cols(), "soc A");
    check_dim(c.size(), "soc c");
    if (A.rows() != b.size()) throw std::invalid_argument("ConicProgram: soc A/b mismatch");
    soc_.push_back({A, b, c, d});
  }

  const std::vector<LinearConstraint>& linear_constraints() const { return linear_; }
  const std::vector<SocConstraint>& soc_constraints() const { return soc_; }
  bool is_pure_lp() const { return soc_.empty(); }

  /// Plain-text dump, one constraint per line, for bug reports.
  std::string dump() const {
    std::ostringstream os;
    os << "min " << objective_.transpose() << "\n";
    for (const auto& lc : linear_) {
      const char* rel = lc.rel == Relation::LessEqual ? "<=" : lc.rel == Relation::Equal ? "==" : ">=";
      os << lc.coeffs.transpose() << " " << rel << " " << lc.rhs << "\n";
    }
    for (const auto& sc : soc_) {
      os << "soc: ||A v + b|| <= c'v + d, rows=" << sc.A.rows() << ", c=" << sc.c.transpose()
         << ", d=" << sc.d << "\n";
    }
    for (int i = 0; i < num_vars_; ++i) os << "x" << i << " in [" << lower_[i] << ", " << upper_[i] << "]\n";
    return os.str();
  }

private:
  void check_dim(Eigen::Index n, const char* what) const {
    if (n != num_vars_) throw std::invalid_argument(std::string("ConicProgram: dimension mismatch in ") + what);
  }

  int num_vars_;
  Vector objective_;
  std::vector<LinearConstraint> linear_;
  std::vector<SocConstraint> soc_;
  Vector lower_, upper_;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    default: return "NumericalFailure";
  }
}

struct SolveOutcome {
  SolveStatus status = SolveStatus::NumericalFailure;
  Vector primal;
  double objective_value = 0.0;
  /// Max primal feasibility violation over all rows, cones and bounds.
  double residual = 0.0;
  /// Objective of the dual solution (equals objective_value at optimality).
  double dual_objective = 0.0;
};

/// Max violation of x against all constraints of prog.
inline double primal_violation(const ConicProgram& prog, const Vector& x) {
  double v = 0.0;
  for (const auto& lc : prog.linear_constraints()) {
    const double ax = lc.coeffs.dot(x);
    if (lc.rel == Relation::LessEqual) v = std::max(v, ax - lc.rhs);
    else if (lc.rel == Relation::GreaterEqual) v = std::max(v, lc.rhs - ax);
    else v = std::max(v, std::abs(ax - lc.rhs));
  }
  for (const auto& sc : prog.soc_constraints())
    v = std::max(v, (sc.A * x + sc.b).norm() - (sc.c.dot(x) + sc.d));
  for (int i = 0; i < prog.num_vars(); ++i) {
    v = std::max(v, prog.lower()[i] - x[i]);
    v = std::max(v, x[i] - prog.upper()[i]);
  }
  return v;
}

} // namespace garo

#endif
