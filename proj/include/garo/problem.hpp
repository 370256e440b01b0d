#ifndef GARO_PROBLEM_HPP
#define GARO_PROBLEM_HPP

#include <stdexcept>
#include <vector>

#include "garo/conic_program.hpp"
#include "garo/core.hpp"
#include "garo/simplex.hpp"

namespace garo {

/// Feasible set X = {x : A x ≥ b, lo ≤ x ≤ hi} with cost f(x,p) = xᵀp.
/// Construction verifies X is nonempty and bounded by solving min/max of
/// every coordinate.
class LinearDecisionProblem {
public:
  LinearDecisionProblem(Matrix a_ineq, Vector b, Vector lower, Vector upper)
      : a_ineq_(std::move(a_ineq)), b_(std::move(b)), lower_(std::move(lower)),
        upper_(std::move(upper)) {
    n_ = static_cast<int>(lower_.size());
    if (upper_.size() != n_ || a_ineq_.cols() != n_ || a_ineq_.rows() != b_.size())
      throw std::invalid_argument("LinearDecisionProblem: dimension mismatch");
    for (int i = 0; i < n_; ++i)
      if (lower_[i] > upper_[i])
        throw std::invalid_argument("LinearDecisionProblem: lo > hi");

    for (int i = 0; i < n_; ++i) {
      for (const double sign : {1.0, -1.0}) {
        ConicProgram lp = base_program();
        Vector c = Vector::Zero(n_);
        c[i] = sign;
        lp.set_objective(c);
        const auto out = solve_lp(lp);
        if (out.status == SolveStatus::Infeasible)
          throw std::invalid_argument("LinearDecisionProblem: empty feasible set");
        if (out.status == SolveStatus::Unbounded)
          throw std::invalid_argument("LinearDecisionProblem: unbounded feasible set");
        if (out.status != SolveStatus::Optimal)
          throw std::runtime_error("LinearDecisionProblem: boundedness check failed");
      }
    }
  }

  int dimension() const { return n_; }
  const Matrix& a_ineq() const { return a_ineq_; }
  const Vector& rhs() const { return b_; }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

  /// ConicProgram over the decision variables only (zero objective).
  ConicProgram base_program() const {
    ConicProgram prog(n_);
    for (int i = 0; i < n_; ++i) prog.set_bounds(i, lower_[i], upper_[i]);
    for (int r = 0; r < a_ineq_.rows(); ++r)
      prog.add_linear(a_ineq_.row(r), Relation::GreaterEqual, b_[r]);
    return prog;
  }

  /// Same region embedded in a program with extra trailing variables.
  void add_region(ConicProgram& prog) const {
    const int m = prog.num_vars();
    if (m < n_) throw std::invalid_argument("add_region: too few variables");
    for (int i = 0; i < n_; ++i) prog.set_bounds(i, lower_[i], upper_[i]);
    for (int r = 0; r < a_ineq_.rows(); ++r) {
      Vector row = Vector::Zero(m);
      row.head(n_) = a_ineq_.row(r);
      prog.add_linear(row, Relation::GreaterEqual, b_[r]);
    }
  }

  double max_violation(const Vector& x) const {
    if (x.size() != n_) throw std::invalid_argument("max_violation: dimension mismatch");
    double v = 0.0;
    for (int r = 0; r < a_ineq_.rows(); ++r)
      v = std::max(v, b_[r] - a_ineq_.row(r).dot(x));
    for (int i = 0; i < n_; ++i) {
      v = std::max(v, lower_[i] - x[i]);
      v = std::max(v, x[i] - upper_[i]);
    }
    return v;
  }

  bool feasible(const Vector& x, double tol = kTolFeas) const { return max_violation(x) <= tol; }

private:
  Matrix a_ineq_;
  Vector b_;
  Vector lower_, upper_;
  int n_ = 0;
};

} // namespace garo

#endif
