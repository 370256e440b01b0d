#ifndef GARO_BASELINES_HPP
#define GARO_BASELINES_HPP

#include <utility>
#include <vector>

#include "garo/garo_solvers.hpp"
#include "garo/robust.hpp"

namespace garo {

/// RO(γ): alias of the robust oracle.
inline std::pair<Vector, double> solve_ro(const LinearDecisionProblem& prob,
                                          const UncertaintyModel& model, double gamma) {
  return robust_oracle(prob, model, gamma);
}

/// RO_d: min_x max over the scenario list of xᵀp (epigraph LP).
inline std::pair<Vector, double> solve_ro_discrete(const LinearDecisionProblem& prob,
                                                   const std::vector<Vector>& scenarios) {
  if (scenarios.empty()) throw std::invalid_argument("solve_ro_discrete: empty scenario list");
  return robust_oracle(prob, DiscreteScenariosModel{scenarios}, 0.0);
}

struct SatConfig {
  double beta = 1.0;         // f₀ = β·v*_wc(0)
  std::vector<double> grid;  // γ grid (sorted)
};

struct SatResult {
  SolveStatus status = SolveStatus::NumericalFailure;
  Vector x;
  double alpha = 0.0;
  double f0 = 0.0;
  bool target_in_range = true; // Eq. (12) precheck v*(0) ≤ f₀ ≤ v*(γ_max)
};

/// SAT: min α ≥ 0 s.t. v_wc(x,γ_t) ≤ f₀ + αγ_t on the grid. The Eq. (12)
/// feasibility precheck v*_wc(0) ≤ f₀ ≤ v*_wc(γ_max) is reported, not clamped;
/// only its lower half is a real infeasibility (above v*(γ_max), α=0 works).
inline SatResult solve_satisficing(const LinearDecisionProblem& prob,
                                   const UncertaintyModel& model, const SatConfig& cfg,
                                   RobustOracleCache* cache = nullptr) {
  if (cfg.beta < 1.0) throw std::invalid_argument("solve_satisficing: beta < 1");
  if (cfg.grid.empty() || !std::is_sorted(cfg.grid.begin(), cfg.grid.end()))
    throw std::invalid_argument("solve_satisficing: grid empty or unsorted");
  RobustOracleCache local(prob, model);
  RobustOracleCache& oracle = cache ? *cache : local;

  SatResult res;
  res.f0 = cfg.beta * oracle(0.0);
  res.target_in_range = res.f0 <= oracle(cfg.grid.back()) + kTolFeas;
  if (oracle(0.0) > res.f0 + kTolFeas) {
    res.status = SolveStatus::Infeasible;
    return res;
  }

  const int n = prob.dimension();
  const int extra = detail::wc_extra_vars(model, n);
  ConicProgram prog(n + extra + 1); // (x, t, aux..., α)
  prob.add_region(prog);
  detail::wc_add_epigraph(prog, model, n, n);
  const int ai = n + extra;
  prog.set_bounds(ai, 0.0, kInf);
  Vector obj = Vector::Zero(n + extra + 1);
  obj[ai] = 1.0;
  prog.set_objective(obj);
  for (const double g : cfg.grid) {
    Vector row = Vector::Zero(n + extra + 1);
    row.head(n) = detail::wc_p0(model);
    row[n] = detail::wc_gamma_coeff(model, g);
    row[ai] = -g;
    prog.add_linear(row, Relation::LessEqual, res.f0);
  }
  const auto out = solve(prog);
  res.status = out.status;
  if (out.status == SolveStatus::Optimal) {
    res.x = out.primal.head(n);
    res.alpha = out.primal[ai];
  }
  return res;
}

/// REG: min α s.t. xᵀp ≤ α + m_p with m_p = min_{x'∈X} x'ᵀp per scenario.
/// The overload with precomputed m_p supports θ sweeps over nested D(γ).
inline std::pair<Vector, double> solve_regret_discrete(const LinearDecisionProblem& prob,
                                                       const std::vector<Vector>& scenarios,
                                                       const std::vector<double>& nominal_optima) {
  if (scenarios.empty()) throw std::invalid_argument("solve_regret_discrete: empty scenario list");
  if (nominal_optima.size() != scenarios.size())
    throw std::invalid_argument("solve_regret_discrete: m_p size mismatch");
  const int n = prob.dimension();
  ConicProgram prog(n + 1); // (x, α)
  prob.add_region(prog);
  prog.set_bounds(n, 0.0, kInf);
  Vector obj = Vector::Zero(n + 1);
  obj[n] = 1.0;
  prog.set_objective(obj);
  for (size_t i = 0; i < scenarios.size(); ++i) {
    Vector row = Vector::Zero(n + 1);
    row.head(n) = scenarios[i];
    row[n] = -1.0;
    prog.add_linear(row, Relation::LessEqual, nominal_optima[i]);
  }
  const auto out = solve(prog);
  if (out.status != SolveStatus::Optimal)
    throw std::runtime_error(std::string("solve_regret_discrete: solver returned ") +
                             to_string(out.status));
  return {out.primal.head(n), out.objective_value};
}

/// Nominal optimum against a single scenario, used for the m_p precompute.
inline double nominal_optimum(const LinearDecisionProblem& prob, const Vector& p) {
  ConicProgram lp = prob.base_program();
  lp.set_objective(p);
  const auto out = solve_lp(lp);
  if (out.status != SolveStatus::Optimal)
    throw std::runtime_error(std::string("nominal_optimum: solver returned ") +
                             to_string(out.status));
  return out.objective_value;
}

inline std::pair<Vector, double> solve_regret_discrete(const LinearDecisionProblem& prob,
                                                       const std::vector<Vector>& scenarios) {
  std::vector<double> m;
  m.reserve(scenarios.size());
  for (const auto& p : scenarios) m.push_back(nominal_optimum(prob, p));
  return solve_regret_discrete(prob, scenarios, m);
}

} // namespace garo

#endif
