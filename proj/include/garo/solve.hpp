#ifndef GARO_SOLVE_HPP
#define GARO_SOLVE_HPP

#include <vector>

#include "garo/conic_program.hpp"
#include "garo/core.hpp"
#include "garo/simplex.hpp"
#include "garo/socp_ipm.hpp"

namespace garo {
namespace detail {

inline SolveOutcome solve_socp(const ConicProgram& prog) {
  const int n = prog.num_vars();

  // Linear inequalities and finite bounds become orthant rows of G x <= h;
  // equalities go to (A, b); each SOC row contributes a cone block
  // [-c'; -A] v <= [d; b] so that s = (c'v + d, Av + b) lies in Q.
  std::vector<Vector> grows;
  std::vector<double> gh;
  std::vector<Vector> arows;
  std::vector<double> ab;
  for (const auto& lc : prog.linear_constraints()) {
    switch (lc.rel) {
      case Relation::LessEqual: grows.push_back(lc.coeffs); gh.push_back(lc.rhs); break;
      case Relation::GreaterEqual: grows.push_back(-lc.coeffs); gh.push_back(-lc.rhs); break;
      case Relation::Equal: arows.push_back(lc.coeffs); ab.push_back(lc.rhs); break;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (prog.upper()[i] < kInf) {
      Vector e = Vector::Zero(n);
      e[i] = 1.0;
      grows.push_back(e);
      gh.push_back(prog.upper()[i]);
    }
    if (prog.lower()[i] > -kInf) {
      Vector e = Vector::Zero(n);
      e[i] = -1.0;
      grows.push_back(e);
      gh.push_back(-prog.lower()[i]);
    }
  }
  const int l = static_cast<int>(grows.size());
  ConeLp::Dims dims;
  dims.l = l;
  int N = l;
  for (const auto& sc : prog.soc_constraints()) {
    dims.q.push_back(static_cast<int>(sc.A.rows()) + 1);
    N += dims.q.back();
  }

  Matrix G = Matrix::Zero(N, n);
  Vector h = Vector::Zero(N);
  for (int r = 0; r < l; ++r) {
    G.row(r) = grows[static_cast<size_t>(r)];
    h[r] = gh[static_cast<size_t>(r)];
  }
  int ind = l;
  for (const auto& sc : prog.soc_constraints()) {
    const int m = static_cast<int>(sc.A.rows());
    G.row(ind) = -sc.c.transpose();
    h[ind] = sc.d;
    G.block(ind + 1, 0, m, n) = -sc.A;
    h.segment(ind + 1, m) = sc.b;
    ind += m + 1;
  }

  const int p = static_cast<int>(arows.size());
  Matrix A(p, n);
  Vector b(p);
  for (int r = 0; r < p; ++r) {
    A.row(r) = arows[static_cast<size_t>(r)];
    b[r] = ab[static_cast<size_t>(r)];
  }

  ConeLp ipm(prog.objective(), std::move(G), std::move(h), dims, std::move(A), std::move(b));
  const auto r = ipm.solve();

  SolveOutcome out;
  switch (r.status) {
    case ConeLp::Status::Optimal:
      out.status = SolveStatus::Optimal;
      break;
    case ConeLp::Status::PrimalInfeasible:
      out.status = SolveStatus::Infeasible;
      return out;
    case ConeLp::Status::DualInfeasible:
      out.status = SolveStatus::Unbounded;
      return out;
    case ConeLp::Status::Unknown: {
      // Iteration limit. Accept the final iterate if it still meets the
      // target accuracy, otherwise report failure.
      const double scale = std::max(1.0, std::abs(r.pcost));
      const bool good = r.pres <= 1e-7 && r.dres <= 1e-7 && r.gap / scale <= kTolObj;
      if (!good) return out;
      out.status = SolveStatus::Optimal;
      break;
    }
  }
  out.primal = r.x;
  out.objective_value = prog.objective().dot(r.x);
  out.dual_objective = r.dcost;
  out.residual = primal_violation(prog, r.x);
  return out;
}

} // namespace detail

/// Solve an LP or SOCP. Pure LPs go through the simplex backend (exact
/// vertex solutions, needed by the parametric routines); anything with a
/// second-order cone row goes through the interior-point backend.
inline SolveOutcome solve(const ConicProgram& prog) {
  if (prog.is_pure_lp()) return solve_lp(prog);
  return detail::solve_socp(prog);
}

} // namespace garo

#endif
