#ifndef GARO_SIMPLEX_HPP
#define GARO_SIMPLEX_HPP

#include <algorithm>
#include <vector>

#include "garo/conic_program.hpp"
#include "garo/core.hpp"

namespace garo {
namespace detail {

// Bounded-variable two-phase primal simplex on the standard form
//   min c'x  s.t.  A x = b,  0 <= x <= u,
// with an explicit basis inverse updated per pivot and periodic
// refactorization. Pivot rules are deterministic: Dantzig with a Bland
// fallback after a stall, smallest-index tie-breaking in the ratio test.
class BoundedSimplex {
public:
  static constexpr double kPivotTol = 1e-9;
  static constexpr double kCostTol = 1e-9;
  static constexpr int kRefactorEvery = 100;

  BoundedSimplex(Matrix A, Vector b, Vector cost, Vector ub, int iter_limit)
      : A_(std::move(A)), b_(std::move(b)), cost_(std::move(cost)), ub_(std::move(ub)),
        m_(static_cast<int>(A_.rows())), n_(static_cast<int>(A_.cols())),
        iter_limit_(iter_limit) {}

  enum class Result { Optimal, Infeasible, Unbounded, IterLimit };

  Result run() {
    normalize_rows();
    build_initial_basis();
    // Phase 1: minimize the sum of artificials.
    if (num_artificial_ > 0) {
      Vector phase1_cost = Vector::Zero(ncols_);
      for (int j = n_; j < ncols_; ++j) phase1_cost[j] = 1.0;
      Result r = optimize(phase1_cost, /*phase1=*/true);
      if (r == Result::IterLimit) return r;
      if (objective(phase1_cost) > 1e-7) return Result::Infeasible;
      for (int j = n_; j < ncols_; ++j) ubx_[j] = 0.0;
    }
    Vector phase2_cost = Vector::Zero(ncols_);
    phase2_cost.head(n_) = cost_;
    return optimize(phase2_cost, /*phase1=*/false);
  }

  Vector solution() const {
    Vector x = Vector::Zero(n_);
    for (int j = 0; j < n_; ++j) x[j] = value_[j];
    return x;
  }

  // Row multipliers y = B^{-T} c_B in the sign convention of the
  // (possibly negated) standardized rows.
  Vector duals(const Vector& full_cost) const {
    Vector cb(m_);
    for (int i = 0; i < m_; ++i) cb[i] = full_cost[basis_[i]];
    Vector y = binv_.transpose() * cb;
    for (int i = 0; i < m_; ++i)
      if (row_flip_[i]) y[i] = -y[i];
    return y;
  }

  // b'y plus the reduced-cost contribution of nonbasic-at-upper columns.
  double dual_objective() const {
    Vector pc = Vector::Zero(ncols_);
    pc.head(n_) = cost_;
    Vector cb(m_);
    for (int i = 0; i < m_; ++i) cb[i] = pc[basis_[i]];
    Vector y = binv_.transpose() * cb;
    double v = b_.dot(y);
    for (int j = 0; j < ncols_; ++j) {
      if (is_basic_[j] || !at_upper_[j]) continue;
      const double dj = pc[j] - y.dot(cols_.col(j));
      v += dj * ubx_[j];
    }
    return v;
  }

private:
  void normalize_rows() {
    row_flip_.assign(m_, false);
    for (int i = 0; i < m_; ++i) {
      if (b_[i] < 0) {
        A_.row(i) = -A_.row(i);
        b_[i] = -b_[i];
        row_flip_[i] = true;
      }
    }
  }

  void build_initial_basis() {
    // A slack column that survived normalization with coefficient +1 and
    // infinite upper bound can start basic; other rows get an artificial.
    std::vector<int> art_rows;
    std::vector<int> row_basis(m_, -1);
    for (int i = 0; i < m_; ++i) row_basis[i] = -1;
    // Identify unit columns usable as a starting basis.
    for (int j = 0; j < n_; ++j) {
      if (ub_[j] != kInf) continue;
      int row = -1;
      bool unit = true;
      for (int i = 0; i < m_ && unit; ++i) {
        const double v = A_(i, j);
        if (v == 0.0) continue;
        if (v == 1.0 && row == -1) row = i;
        else unit = false;
      }
      if (unit && row >= 0 && row_basis[row] == -1) row_basis[row] = j;
    }
    num_artificial_ = 0;
    for (int i = 0; i < m_; ++i)
      if (row_basis[i] == -1) ++num_artificial_;

    ncols_ = n_ + num_artificial_;
    cols_.resize(m_, ncols_);
    cols_.leftCols(n_) = A_;
    ubx_.resize(ncols_);
    ubx_.head(n_) = ub_;
    int art = n_;
    basis_.assign(m_, -1);
    for (int i = 0; i < m_; ++i) {
      if (row_basis[i] >= 0) {
        basis_[i] = row_basis[i];
      } else {
        cols_.col(art).setZero();
        cols_(i, art) = 1.0;
        ubx_[art] = kInf;
        basis_[i] = art;
        ++art;
      }
    }
    is_basic_.assign(ncols_, false);
    at_upper_.assign(ncols_, false);
    value_.assign(ncols_, 0.0);
    for (int i = 0; i < m_; ++i) is_basic_[basis_[i]] = true;
    refactorize();
    recompute_basics();
  }

  void refactorize() {
    Matrix B(m_, m_);
    for (int i = 0; i < m_; ++i) B.col(i) = cols_.col(basis_[i]);
    binv_ = B.partialPivLu().inverse();
  }

  void recompute_basics() {
    Vector rhs = b_;
    for (int j = 0; j < ncols_; ++j)
      if (!is_basic_[j] && at_upper_[j]) rhs -= cols_.col(j) * ubx_[j];
    Vector xb = binv_ * rhs;
    for (int i = 0; i < m_; ++i) value_[basis_[i]] = xb[i];
    for (int j = 0; j < ncols_; ++j)
      if (!is_basic_[j]) value_[j] = at_upper_[j] ? ubx_[j] : 0.0;
  }

  double objective(const Vector& c) const {
    double v = 0.0;
    for (int j = 0; j < ncols_; ++j) v += c[j] * value_[j];
    return v;
  }

  Result optimize(const Vector& c, bool phase1) {
    int stall = 0;
    double last_obj = objective(c);
    for (; iters_ < iter_limit_; ++iters_) {
      Vector cb(m_);
      for (int i = 0; i < m_; ++i) cb[i] = c[basis_[i]];
      Vector y = binv_.transpose() * cb;

      // Entering column: Dantzig by default, Bland when stalled.
      const bool bland = stall > 200;
      int enter = -1;
      double best = -kCostTol;
      for (int j = 0; j < ncols_; ++j) {
        if (is_basic_[j]) continue;
        if (ubx_[j] == 0.0 && !phase1) continue; // fixed (retired artificial)
        const double dj = c[j] - y.dot(cols_.col(j));
        const double score = at_upper_[j] ? -dj : dj;
        if (score < -kCostTol) {
          if (bland) { enter = j; break; }
          if (score < best) { best = score; enter = j; }
        }
      }
      if (enter == -1) return Result::Optimal;

      // Direction of basic variables as the entering variable moves by +t
      // away from its current bound.
      const double dir = at_upper_[enter] ? -1.0 : 1.0;
      Vector w = binv_ * cols_.col(enter); // x_B changes by -dir * w * t

      double tmax = ubx_[enter] == kInf ? kInf : ubx_[enter];
      int leave = -1; // index into basis_, -1 means bound flip
      bool leave_to_upper = false;
      for (int i = 0; i < m_; ++i) {
        const double delta = -dir * w[i];
        const int bj = basis_[i];
        double t;
        bool to_upper;
        if (delta < -kPivotTol) {
          t = value_[bj] / (-delta); // hits lower bound 0
          to_upper = false;
        } else if (delta > kPivotTol && ubx_[bj] != kInf) {
          t = (ubx_[bj] - value_[bj]) / delta; // hits upper bound
          to_upper = true;
        } else {
          continue;
        }
        if (t < 0) t = 0;
        if (t < tmax - 1e-12 || (t < tmax + 1e-12 && leave != -1 && bj < basis_[leave])) {
          tmax = t;
          leave = i;
          leave_to_upper = to_upper;
        }
      }

      if (tmax == kInf) return phase1 ? Result::IterLimit : Result::Unbounded;

      // Apply the step.
      for (int i = 0; i < m_; ++i) value_[basis_[i]] += -dir * w[i] * tmax;
      value_[enter] += dir * tmax;

      if (leave == -1) {
        at_upper_[enter] = !at_upper_[enter];
      } else {
        const int out = basis_[leave];
        is_basic_[out] = false;
        at_upper_[out] = leave_to_upper;
        value_[out] = leave_to_upper ? ubx_[out] : 0.0;
        basis_[leave] = enter;
        is_basic_[enter] = true;
        at_upper_[enter] = false;
        // Eta update of the explicit inverse.
        const double piv = w[leave];
        Vector row = binv_.row(leave) / piv;
        for (int i = 0; i < m_; ++i) {
          if (i == leave) continue;
          binv_.row(i) -= w[i] * row.transpose();
        }
        binv_.row(leave) = row.transpose();
        if (++pivots_since_refactor_ >= kRefactorEvery) {
          refactorize();
          recompute_basics();
          pivots_since_refactor_ = 0;
        }
      }

      const double obj = objective(c);
      if (obj < last_obj - 1e-12) { stall = 0; last_obj = obj; }
      else ++stall;
    }
    return Result::IterLimit;
  }

  Matrix A_;
  Vector b_;
  Vector cost_;
  Vector ub_;
  int m_, n_;
  int iter_limit_;
  int iters_ = 0;
  int pivots_since_refactor_ = 0;
  int ncols_ = 0;
  int num_artificial_ = 0;
  Matrix cols_;
  Vector ubx_;
  std::vector<int> basis_;
  std::vector<bool> is_basic_, at_upper_;
  std::vector<bool> row_flip_;
  std::vector<double> value_;
  Matrix binv_;
};

// Standardized image of a pure-LP ConicProgram: all variables shifted or
// split to lower bound zero, all rows turned into equalities with slacks.
struct StandardLp {
  Matrix A;
  Vector b;
  Vector cost;
  Vector ub;
  double obj_shift = 0.0;
  // Per original variable: column index, companion column for split vars
  // (-1 otherwise), and the affine recovery x = base + sign * x'.
  struct VarMap {
    int col;
    int neg_col;
    double base;
    double sign;
  };
  std::vector<VarMap> vars;
  int num_rows = 0;
};

inline StandardLp standardize_lp(const ConicProgram& prog) {
  StandardLp s;
  const int n = prog.num_vars();
  const int m = static_cast<int>(prog.linear_constraints().size());
  s.num_rows = m;
  int cols = 0;
  s.vars.resize(n);
  for (int i = 0; i < n; ++i) {
    const double lo = prog.lower()[i], hi = prog.upper()[i];
    if (lo != -kInf) {
      s.vars[i] = {cols++, -1, lo, 1.0};
    } else if (hi != kInf) {
      s.vars[i] = {cols++, -1, hi, -1.0};
    } else {
      s.vars[i] = {cols, cols + 1, 0.0, 1.0};
      cols += 2;
    }
  }
  const int num_slack = m; // one per row; zero-width for equalities
  s.A = Matrix::Zero(m, cols + num_slack);
  s.b = Vector::Zero(m);
  s.cost = Vector::Zero(cols + num_slack);
  s.ub = Vector::Constant(cols + num_slack, kInf);

  for (int i = 0; i < n; ++i) {
    const auto& vm = s.vars[i];
    const double c = prog.objective()[i];
    s.obj_shift += c * vm.base;
    if (vm.neg_col >= 0) {
      s.cost[vm.col] = c;
      s.cost[vm.neg_col] = -c;
    } else {
      s.cost[vm.col] = c * vm.sign;
      const double hi = prog.upper()[i];
      if (vm.sign > 0 && hi != kInf) s.ub[vm.col] = hi - prog.lower()[i];
    }
  }
  for (int r = 0; r < m; ++r) {
    const auto& lc = prog.linear_constraints()[r];
    double rhs = lc.rhs;
    for (int i = 0; i < n; ++i) {
      const double a = lc.coeffs[i];
      if (a == 0.0) continue;
      const auto& vm = s.vars[i];
      rhs -= a * vm.base;
      if (vm.neg_col >= 0) {
        s.A(r, vm.col) += a;
        s.A(r, vm.neg_col) -= a;
      } else {
        s.A(r, vm.col) += a * vm.sign;
      }
    }
    // Slack: <= gets +1, >= is negated into <= first, == gets a fixed slack.
    double sign = 1.0;
    if (lc.rel == Relation::GreaterEqual) {
      s.A.row(r) = -s.A.row(r);
      rhs = -rhs;
      sign = -1.0; // remember for dual mapping if ever needed
      (void)sign;
    }
    s.b[r] = rhs;
    const int sc = cols + r;
    if (lc.rel == Relation::Equal) s.ub[sc] = 0.0;
    s.A(r, sc) = 1.0;
  }
  return s;
}

} // namespace detail

/// Solve a pure LP with the simplex method. The returned primal is a vertex
/// (basic solution) of the feasible region.
inline SolveOutcome solve_lp(const ConicProgram& prog, int iter_limit = 10000) {
  if (!prog.is_pure_lp()) throw std::invalid_argument("solve_lp: program has SOC rows");
  SolveOutcome out;
  detail::StandardLp s = detail::standardize_lp(prog);
  detail::BoundedSimplex simplex(s.A, s.b, s.cost, s.ub, iter_limit);
  const auto r = simplex.run();
  switch (r) {
    case detail::BoundedSimplex::Result::Infeasible:
      out.status = SolveStatus::Infeasible;
      return out;
    case detail::BoundedSimplex::Result::Unbounded:
      out.status = SolveStatus::Unbounded;
      return out;
    case detail::BoundedSimplex::Result::IterLimit:
      out.status = SolveStatus::NumericalFailure;
      return out;
    case detail::BoundedSimplex::Result::Optimal:
      break;
  }
  const Vector xs = simplex.solution();
  Vector x(prog.num_vars());
  for (int i = 0; i < prog.num_vars(); ++i) {
    const auto& vm = s.vars[i];
    double v = vm.base;
    if (vm.neg_col >= 0) v += xs[vm.col] - xs[vm.neg_col];
    else v += vm.sign * xs[vm.col];
    x[i] = v;
  }
  out.status = SolveStatus::Optimal;
  out.primal = x;
  out.objective_value = prog.objective().dot(x);
  out.residual = primal_violation(prog, x);
  out.dual_objective = simplex.dual_objective() + s.obj_shift;
  return out;
}

} // namespace garo

#endif
