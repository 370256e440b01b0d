#ifndef GARO_GARO_SOLVERS_HPP
#define GARO_GARO_SOLVERS_HPP

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "garo/rate.hpp"
#include "garo/robust.hpp"

namespace garo {

/// Memoizes v*_wc(γ) — Eq. (GARO_d) treats the oracle values as data, and
/// the same radii recur across masters, audits and separation calls.
class RobustOracleCache {
public:
  RobustOracleCache(LinearDecisionProblem prob, UncertaintyModel model)
      : prob_(std::move(prob)), model_(std::move(model)) {}

  double operator()(double gamma) {
    const auto it = values_.find(gamma);
    if (it != values_.end()) return it->second;
    const double v = robust_oracle(prob_, model_, gamma).second;
    values_.emplace(gamma, v);
    return v;
  }

  const LinearDecisionProblem& problem() const { return prob_; }
  const UncertaintyModel& model() const { return model_; }

private:
  LinearDecisionProblem prob_;
  UncertaintyModel model_;
  std::map<double, double> values_;
};

struct CgIteration {
  int iter = 0;
  double gamma_added = 0.0;
  double violation = 0.0;
  double alpha = 0.0;
};

struct GaroSolution {
  Vector x;
  double alpha = 0.0;
  std::vector<std::pair<double, double>> slacks; // (γ_t, αφ(γ_t) − A(x,γ_t))
  std::string method;
  std::vector<double> grid;
  double runtime_s = 0.0;

  // Constraint-generation extras.
  bool converged = true;
  double final_violation = 0.0;
  double certified_gap = 0.0; // ε/φ_min when φ_min > 0, +inf otherwise
  std::vector<CgIteration> log;

  double min_slack() const {
    double m = kInf;
    for (const auto& [g, s] : slacks) m = std::min(m, s);
    return m;
  }
};

/// Δ(L + αL′) — the Theorem 3 feasibility-violation bound.
inline double discretization_error_bound(double delta, double L, double Lprime, double alpha) {
  if (delta < 0.0 || L < 0.0 || Lprime < 0.0 || alpha < 0.0)
    throw std::invalid_argument("discretization_error_bound: negative input");
  return delta * (L + alpha * Lprime);
}

/// GARO_d: min α s.t. v_wc(x,γ_t) ≤ v*_wc(γ_t) + αφ(γ_t) over the grid.
inline GaroSolution solve_garo_discretized(const LinearDecisionProblem& prob,
                                           const UncertaintyModel& model,
                                           const std::vector<double>& grid,
                                           const RateFunction& phi,
                                           RobustOracleCache* cache = nullptr) {
  if (grid.empty()) throw std::invalid_argument("solve_garo_discretized: empty grid");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::invalid_argument("solve_garo_discretized: grid not sorted");
  const auto t0 = std::chrono::steady_clock::now();
  const int n = prob.dimension();

  RobustOracleCache local(prob, model);
  RobustOracleCache& oracle = cache ? *cache : local;

  std::vector<double> vstar(grid.size()), phis(grid.size());
  for (size_t t = 0; t < grid.size(); ++t) {
    vstar[t] = oracle(grid[t]);
    phis[t] = rate_eval(phi, grid[t]);
    if (phis[t] < 0.0) throw std::invalid_argument("solve_garo_discretized: phi < 0");
  }

  SolveOutcome out;
  if (const auto* d = std::get_if<DiscreteScenariosModel>(&model)) {
    // v_wc is the max over scenarios; one row per (scenario, grid point).
    ConicProgram prog(n + 1); // (x, α)
    prob.add_region(prog);
    prog.set_bounds(n, 0.0, kInf);
    Vector obj = Vector::Zero(n + 1);
    obj[n] = 1.0;
    prog.set_objective(obj);
    for (size_t t = 0; t < grid.size(); ++t) {
      for (const auto& p : d->points) {
        Vector row = Vector::Zero(n + 1);
        row.head(n) = p;
        row[n] = -phis[t];
        prog.add_linear(row, Relation::LessEqual, vstar[t]);
      }
    }
    out = solve(prog);
  } else {
    const int extra = detail::wc_extra_vars(model, n);
    ConicProgram prog(n + extra + 1); // (x, t, aux..., α)
    prob.add_region(prog);
    detail::wc_add_epigraph(prog, model, n, n);
    const int ai = n + extra;
    prog.set_bounds(ai, 0.0, kInf);
    Vector obj = Vector::Zero(n + extra + 1);
    obj[ai] = 1.0;
    prog.set_objective(obj);
    for (size_t t = 0; t < grid.size(); ++t) {
      Vector row = Vector::Zero(n + extra + 1);
      row.head(n) = detail::wc_p0(model);
      row[n] = detail::wc_gamma_coeff(model, grid[t]);
      row[ai] = -phis[t];
      prog.add_linear(row, Relation::LessEqual, vstar[t]);
    }
    out = solve(prog);
  }
  if (out.status != SolveStatus::Optimal)
    throw std::runtime_error(std::string("solve_garo_discretized: solver returned ") +
                             to_string(out.status));

  GaroSolution sol;
  sol.x = out.primal.head(n);
  sol.alpha = out.primal[out.primal.size() - 1];
  sol.method = "garo_d";
  sol.grid = grid;
  for (size_t t = 0; t < grid.size(); ++t) {
    const double regret = worst_case_cost(model, sol.x, grid[t]) - vstar[t];
    sol.slacks.emplace_back(grid[t], sol.alpha * phis[t] - regret);
  }
  sol.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return sol;
}

/// Exact GARO when v_wc(x,·) is affine and φ concave: only the two extreme
/// radii of Γ can bind (§5.1 Proposition). Audited on a 100-point grid.
inline GaroSolution solve_garo_two_point(const LinearDecisionProblem& prob,
                                         const UncertaintyModel& model,
                                         const GammaInterval& range, const RateFunction& phi,
                                         RobustOracleCache* cache = nullptr) {
  if (!std::holds_alternative<NormBallModel>(model))
    throw std::invalid_argument(
        "solve_garo_two_point: v_wc must be affine in gamma (NormBall models only)");
  if (!detail::rate_is_concave(phi))
    throw std::invalid_argument("solve_garo_two_point: rate function must be concave");

  std::vector<double> grid{range.lo};
  if (range.hi > range.lo) grid.push_back(range.hi);
  GaroSolution sol = solve_garo_discretized(prob, model, grid, phi, cache);
  sol.method = "garo_two_point";

  RobustOracleCache local(prob, model);
  RobustOracleCache& oracle = cache ? *cache : local;
  sol.slacks.clear();
  const int kAudit = 100;
  for (int i = 0; i < kAudit; ++i) {
    const double g =
        range.lo + (range.hi - range.lo) * static_cast<double>(i) / (kAudit - 1);
    const double regret = worst_case_cost(model, sol.x, g) - oracle(g);
    sol.slacks.emplace_back(g, sol.alpha * rate_eval(phi, g) - regret);
  }
  return sol;
}

namespace detail {

// Shubert–Piyavskii maximization of f over [lo, hi] with Lipschitz bound L:
// returns (argmax, max) within tol of the global maximum.
inline std::pair<double, double> shubert_piyavskii(const std::function<double(double)>& f,
                                                   double lo, double hi, double L, double tol,
                                                   int max_evals = 20000) {
  const double flo = f(lo);
  if (hi <= lo) return {lo, flo};
  const double fhi = f(hi);
  double best_x = flo >= fhi ? lo : hi;
  double best_f = std::max(flo, fhi);

  struct Piece {
    double a, b, fa, fb;
  };
  const auto upper = [&](const Piece& p) { return 0.5 * (p.fa + p.fb) + 0.5 * L * (p.b - p.a); };
  const auto cmp = [&](const Piece& x, const Piece& y) { return upper(x) < upper(y); };
  std::priority_queue<Piece, std::vector<Piece>, decltype(cmp)> heap(cmp);
  heap.push({lo, hi, flo, fhi});
  int evals = 2;
  while (!heap.empty() && evals < max_evals) {
    const Piece p = heap.top();
    heap.pop();
    if (upper(p) <= best_f + tol) break;
    // Peak of the saw-tooth over [a,b].
    double m = 0.5 * (p.a + p.b) + (p.fa - p.fb) / (2.0 * L);
    m = std::min(std::max(m, p.a), p.b);
    if (m <= p.a || m >= p.b) m = 0.5 * (p.a + p.b);
    const double fm = f(m);
    ++evals;
    if (fm > best_f) {
      best_f = fm;
      best_x = m;
    }
    heap.push({p.a, m, p.fa, fm});
    heap.push({m, p.b, fm, p.fb});
  }
  return {best_x, best_f};
}

} // namespace detail

/// Most-violated radius of γ ↦ A(x,γ) − αφ(γ) over Γ by Shubert–Piyavskii
/// with caller-supplied Lipschitz bound (within 1e-7 of the global max).
inline std::pair<double, double> separate_lipschitz(const LinearDecisionProblem& prob,
                                                    const UncertaintyModel& model, const Vector& x,
                                                    double alpha, const GammaInterval& range,
                                                    const RateFunction& phi, double L_g,
                                                    RobustOracleCache* cache = nullptr) {
  if (!(L_g > 0.0)) throw std::invalid_argument("separate_lipschitz: L_g must be positive");
  RobustOracleCache local(prob, model);
  RobustOracleCache& oracle = cache ? *cache : local;
  const auto g = [&](double gamma) {
    return worst_case_cost(model, x, gamma) - oracle(gamma) - alpha * rate_eval(phi, gamma);
  };
  const auto [gs, viol] = detail::shubert_piyavskii(g, range.lo, range.hi, L_g, 1e-7);
  return {gs, viol};
}

/// Exact separation for polyhedral-norm models: the violation is, on each
/// oracle-path segment, Δ_tγ − αφ(γ) plus a constant, so each segment max is
/// a perspective conjugate (Eq. (24)).
inline std::pair<double, double> separate_parametric(const LinearDecisionProblem& prob,
                                                     const UncertaintyModel& model,
                                                     const Vector& x, double alpha,
                                                     const GammaInterval& range,
                                                     const RateFunction& phi,
                                                     const OraclePath* traced = nullptr) {
  const auto* nb = std::get_if<NormBallModel>(&model);
  if (!nb || nb->norm == NormKind::L2)
    throw std::invalid_argument("separate_parametric: needs a polyhedral norm (L1/Linf)");
  OraclePath local_path;
  if (!traced) {
    local_path = trace_oracle_path(prob, model, range);
    traced = &local_path;
  }
  const double sx = norm_value(dual_norm(nb->norm), x);
  const double c0 = x.dot(nb->p0);

  double best = -kInf, best_gamma = range.lo;
  for (const auto& seg : traced->segments) {
    const double a = std::max(seg.gamma_lo, range.lo);
    const double b = std::min(seg.gamma_hi, range.hi);
    if (a > b) continue;
    const double delta = sx - seg.slope;
    const double base = c0 - seg.intercept;
    double val, gs;
    if (alpha == 0.0) {
      val = std::max(delta * a, delta * b);
      gs = delta >= 0.0 ? b : a;
    } else {
      const auto [conj, arg] = detail::interval_conjugate_argmax(phi, a, b, delta / alpha);
      val = alpha * conj;
      gs = arg;
    }
    if (base + val > best) {
      best = base + val;
      best_gamma = gs;
    }
  }
  return {best_gamma, best};
}

using SeparationOracle = std::function<std::pair<double, double>(const Vector&, double)>;

/// Algorithm 1: master over the accumulated cut set C (initialized with the
/// extremes of Γ), separation, repeat until the max violation drops below ε.
inline GaroSolution solve_garo_constraint_generation(const LinearDecisionProblem& prob,
                                                     const UncertaintyModel& model,
                                                     const GammaInterval& range,
                                                     const RateFunction& phi, double eps,
                                                     const SeparationOracle& separation,
                                                     int max_iters = 500,
                                                     RobustOracleCache* cache = nullptr) {
  if (!(eps > 0.0)) throw std::invalid_argument("solve_garo_constraint_generation: eps <= 0");
  const auto t0 = std::chrono::steady_clock::now();
  RobustOracleCache local(prob, model);
  RobustOracleCache& oracle = cache ? *cache : local;

  std::vector<double> cuts{range.lo};
  if (range.hi > range.lo) cuts.push_back(range.hi);

  GaroSolution sol;
  for (int iter = 0; iter < max_iters; ++iter) {
    sol = solve_garo_discretized(prob, model, cuts, phi, &oracle);
    const auto [gs, viol] = separation(sol.x, sol.alpha);
    sol.log.push_back({iter, gs, viol, sol.alpha});
    sol.final_violation = viol;
    if (viol < eps) {
      sol.converged = true;
      break;
    }
    const auto pos = std::lower_bound(cuts.begin(), cuts.end(), gs);
    const bool dup = (pos != cuts.end() && *pos - gs <= kBreakpointMergeTol) ||
                     (pos != cuts.begin() && gs - *(pos - 1) <= kBreakpointMergeTol);
    if (dup || iter + 1 == max_iters) {
      sol.converged = false; // cap exceeded or separation stalled on an old cut
      break;
    }
    cuts.insert(pos, gs);
  }
  sol.method = "garo_cg";
  sol.grid = cuts;
  const double phi_min = rate_eval(phi, range.lo);
  sol.certified_gap = phi_min > 0.0 ? eps / phi_min : kInf;
  sol.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return sol;
}

} // namespace garo

#endif
