#ifndef GARO_ROBUST_HPP
#define GARO_ROBUST_HPP

#include <stdexcept>
#include <utility>
#include <vector>

#include "garo/parametric_lp.hpp"
#include "garo/problem.hpp"
#include "garo/solve.hpp"
#include "garo/uncertainty.hpp"

namespace garo {

namespace detail {

// v_wc(x,γ) for NormBall/Ellipsoidal models is xᵀp0 + coeff(γ)·t with one
// epigraph variable t bounding the dual norm (resp. ‖Σ̃^{1/2}x‖). The helpers
// below let callers embed that epigraph into larger master programs.

inline int wc_extra_vars(const UncertaintyModel& model, int n) {
  if (const auto* nb = std::get_if<NormBallModel>(&model))
    return nb->norm == NormKind::Linf ? 1 + n : 1; // dual L1 needs u_i ≥ ±x_i
  if (std::holds_alternative<EllipsoidalModel>(model)) return 1;
  throw std::invalid_argument("wc_extra_vars: model has no epigraph form");
}

inline double wc_gamma_coeff(const UncertaintyModel& model, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("wc_gamma_coeff: gamma < 0");
  if (std::holds_alternative<EllipsoidalModel>(model)) return std::sqrt(gamma);
  return gamma;
}

inline const Vector& wc_p0(const UncertaintyModel& model) {
  if (const auto* nb = std::get_if<NormBallModel>(&model)) return nb->p0;
  if (const auto* e = std::get_if<EllipsoidalModel>(&model)) return e->p0;
  throw std::invalid_argument("wc_p0: model has no center");
}

// Ties t (variable index t_idx, aux vars directly after) to the decision
// variables x[0..n): t ≥ ‖x‖_* or t ≥ ‖Σ̃^{1/2}x‖.
inline void wc_add_epigraph(ConicProgram& prog, const UncertaintyModel& model, int n, int t_idx) {
  const int m = prog.num_vars();
  prog.set_bounds(t_idx, 0.0, kInf);
  if (const auto* nb = std::get_if<NormBallModel>(&model)) {
    switch (nb->norm) {
      case NormKind::L1: // dual Linf: t ≥ ±x_i
        for (int i = 0; i < n; ++i) {
          Vector row = Vector::Zero(m);
          row[t_idx] = 1.0;
          row[i] = -1.0;
          prog.add_linear(row, Relation::GreaterEqual, 0.0);
          row[i] = 1.0;
          prog.add_linear(row, Relation::GreaterEqual, 0.0);
        }
        return;
      case NormKind::Linf: // dual L1: u_i ≥ ±x_i, t ≥ Σ u_i
      {
        for (int i = 0; i < n; ++i) {
          prog.set_bounds(t_idx + 1 + i, 0.0, kInf);
          Vector row = Vector::Zero(m);
          row[t_idx + 1 + i] = 1.0;
          row[i] = -1.0;
          prog.add_linear(row, Relation::GreaterEqual, 0.0);
          row[i] = 1.0;
          prog.add_linear(row, Relation::GreaterEqual, 0.0);
        }
        Vector row = Vector::Zero(m);
        row[t_idx] = 1.0;
        for (int i = 0; i < n; ++i) row[t_idx + 1 + i] = -1.0;
        prog.add_linear(row, Relation::GreaterEqual, 0.0);
        return;
      }
      case NormKind::L2: {
        Matrix A = Matrix::Zero(n, m);
        A.block(0, 0, n, n) = Matrix::Identity(n, n);
        Vector c = Vector::Zero(m);
        c[t_idx] = 1.0;
        prog.add_soc(A, Vector::Zero(n), c, 0.0);
        return;
      }
    }
  }
  const auto& e = std::get<EllipsoidalModel>(model);
  const Eigen::SelfAdjointEigenSolver<Matrix> es(e.sigma);
  const Matrix sqrt_sigma = es.operatorSqrt();
  Matrix A = Matrix::Zero(n, m);
  A.block(0, 0, n, n) = sqrt_sigma;
  Vector c = Vector::Zero(m);
  c[t_idx] = 1.0;
  prog.add_soc(A, Vector::Zero(n), c, 0.0);
}

} // namespace detail

/// min_{x∈X} v_wc(x,γ) and its argmin.
inline std::pair<Vector, double> robust_oracle(const LinearDecisionProblem& prob,
                                               const UncertaintyModel& model, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("robust_oracle: gamma < 0");
  const int n = prob.dimension();

  if (const auto* d = std::get_if<DiscreteScenariosModel>(&model)) {
    if (d->points.empty()) throw std::invalid_argument("robust_oracle: empty scenario list");
    ConicProgram prog(n + 1); // (x, z): min z s.t. xᵀp_i ≤ z
    prob.add_region(prog);
    Vector obj = Vector::Zero(n + 1);
    obj[n] = 1.0;
    prog.set_objective(obj);
    for (const auto& p : d->points) {
      Vector row = Vector::Zero(n + 1);
      row.head(n) = -p;
      row[n] = 1.0;
      prog.add_linear(row, Relation::GreaterEqual, 0.0);
    }
    const auto out = solve(prog);
    if (out.status != SolveStatus::Optimal)
      throw std::runtime_error(std::string("robust_oracle: solver returned ") +
                               to_string(out.status));
    return {out.primal.head(n), out.objective_value};
  }

  if (gamma == 0.0) {
    // Nominal LP; keeps the γ=0 case off the interior-point path, where the
    // zero-weight epigraph variable makes the optimal face unbounded.
    ConicProgram lp = prob.base_program();
    lp.set_objective(detail::wc_p0(model));
    const auto out = solve_lp(lp);
    if (out.status != SolveStatus::Optimal)
      throw std::runtime_error(std::string("robust_oracle: solver returned ") +
                               to_string(out.status));
    return {out.primal, out.objective_value};
  }

  const int extra = detail::wc_extra_vars(model, n);
  ConicProgram prog(n + extra);
  prob.add_region(prog);
  detail::wc_add_epigraph(prog, model, n, n);
  Vector obj = Vector::Zero(n + extra);
  obj.head(n) = detail::wc_p0(model);
  obj[n] = detail::wc_gamma_coeff(model, gamma);
  prog.set_objective(obj);
  const auto out = solve(prog);
  if (out.status != SolveStatus::Optimal)
    throw std::runtime_error(std::string("robust_oracle: solver returned ") +
                             to_string(out.status));
  const Vector x = out.primal.head(n);
  // Report through worst_case_cost so the value is exact even when the
  // epigraph variable carries slack (γ=0 leaves t free).
  return {x, worst_case_cost(model, x, gamma)};
}

/// A(x,γ) = v_wc(x,γ) − v*_wc(γ).
inline double adversarial_regret(const LinearDecisionProblem& prob, const UncertaintyModel& model,
                                 const Vector& x, double gamma) {
  if (!prob.feasible(x))
    throw std::invalid_argument("adversarial_regret: x infeasible beyond tol_feas");
  return worst_case_cost(model, x, gamma) - robust_oracle(prob, model, gamma).second;
}

struct OraclePathSegment {
  double gamma_lo = 0.0, gamma_hi = 0.0;
  Vector vertex; // extreme point optimal on the segment
  double intercept = 0.0, slope = 0.0;
};

/// Piecewise-linear γ ↦ v*_wc(γ) for polyhedral-norm models.
struct OraclePath {
  std::vector<OraclePathSegment> segments;

  const OraclePathSegment& segment_at(double gamma) const {
    if (segments.empty() || gamma < gamma_lo() - 1e-12 || gamma > gamma_hi() + 1e-12)
      throw std::out_of_range("OraclePath: gamma outside traced range");
    for (const auto& s : segments)
      if (gamma <= s.gamma_hi) return s;
    return segments.back();
  }

  double value_at(double gamma) const {
    const auto& s = segment_at(gamma);
    return s.intercept + s.slope * gamma;
  }

  double gamma_lo() const { return segments.front().gamma_lo; }
  double gamma_hi() const { return segments.back().gamma_hi; }
};

/// Trace v*_wc over Γ via the parametric simplex on the dual-norm epigraph LP.
inline OraclePath trace_oracle_path(const LinearDecisionProblem& prob,
                                    const UncertaintyModel& model, const GammaInterval& range) {
  const auto* nb = std::get_if<NormBallModel>(&model);
  if (!nb || nb->norm == NormKind::L2)
    throw std::invalid_argument("trace_oracle_path: needs a polyhedral norm (L1/Linf)");
  const int n = prob.dimension();
  const int extra = detail::wc_extra_vars(model, n);
  ConicProgram prog(n + extra);
  prob.add_region(prog);
  detail::wc_add_epigraph(prog, model, n, n);
  Vector base = Vector::Zero(n + extra);
  base.head(n) = nb->p0;
  prog.set_objective(base);
  Vector direction = Vector::Zero(n + extra);
  direction[n] = 1.0;

  const auto pieces = solve_lp_parametric(prog, direction, range.lo, range.hi);
  OraclePath path;
  for (const auto& seg : pieces) {
    const Vector x = seg.vertex.head(n);
    // Reconstruct the line from the decision vector: slope = ‖x‖_*, exact
    // even when t carries slack at γ=0.
    const double slope = norm_value(dual_norm(nb->norm), x);
    path.segments.push_back({seg.gamma_lo, seg.gamma_hi, x, x.dot(nb->p0), slope});
  }
  return path;
}

} // namespace garo

#endif
