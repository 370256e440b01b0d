#ifndef GARO_ADAPTIVE_HPP
#define GARO_ADAPTIVE_HPP

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "garo/core.hpp"

namespace garo {

/// Estimates with confidence radii, sorted by nondecreasing γ_j (Eq. (16)).
struct EstimatorFamily {
  struct Entry {
    double estimate = 0.0; // p₀(κ_j)
    double radius = 0.0;   // γ_j > 0
  };
  std::vector<Entry> entries;
};

/// Level j holds P_{γ_j} = ∩_{i≥j} [p₀(κ_i) ± γ_i]; empty levels flagged.
struct NestedIntervalSets {
  struct Level {
    double lo = 0.0, hi = 0.0;
    bool empty = false;
  };
  std::vector<Level> levels;
};

inline NestedIntervalSets build_nested_sets(const EstimatorFamily& fam) {
  if (fam.entries.empty()) throw std::invalid_argument("build_nested_sets: empty family");
  for (size_t j = 0; j + 1 < fam.entries.size(); ++j)
    if (fam.entries[j].radius > fam.entries[j + 1].radius)
      throw std::invalid_argument("build_nested_sets: radii must be nondecreasing");
  const size_t J = fam.entries.size();
  NestedIntervalSets sets;
  sets.levels.resize(J);
  double lo = -kInf, hi = kInf;
  for (size_t k = J; k-- > 0;) { // suffix intersection
    lo = std::max(lo, fam.entries[k].estimate - fam.entries[k].radius);
    hi = std::min(hi, fam.entries[k].estimate + fam.entries[k].radius);
    sets.levels[k] = {lo, hi, lo > hi};
  }
  return sets;
}

/// Exact 1-D relative-rate GARO of Theorem 2: minimize over x the largest
/// level ratio max(|x−lo_j|, |x−hi_j|)/r_j − 1 = |x−c_j|/r_j. The minimum of
/// a max of V-shapes sits at a center or at a pairwise balance point
/// (r_j·c_i + r_i·c_j)/(r_i + r_j).
inline std::pair<double, double> solve_adaptive_garo(const NestedIntervalSets& sets) {
  std::vector<double> c, r;
  for (const auto& lvl : sets.levels) {
    if (lvl.empty) continue;
    c.push_back(0.5 * (lvl.lo + lvl.hi));
    r.push_back(0.5 * (lvl.hi - lvl.lo));
  }
  if (c.empty()) throw std::invalid_argument("solve_adaptive_garo: all levels empty");

  const auto objective = [&](double x) {
    double worst = 0.0;
    for (size_t j = 0; j < c.size(); ++j) {
      const double ratio = r[j] > 0.0 ? std::abs(x - c[j]) / r[j]
                                      : (std::abs(x - c[j]) > 0.0 ? kInf : 0.0);
      worst = std::max(worst, ratio);
    }
    return worst;
  };

  std::vector<double> candidates = c;
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = i + 1; j < c.size(); ++j)
      if (r[i] + r[j] > 0.0)
        candidates.push_back((r[j] * c[i] + r[i] * c[j]) / (r[i] + r[j]));

  double best_x = candidates.front(), best = kInf;
  for (const double x : candidates) {
    const double v = objective(x);
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  return {best_x, best};
}

/// Lemma §4.2 surrogate: whenever every level is nonempty, α_garo ≤ 1.
inline bool lepskii_alpha_bound_check(const NestedIntervalSets& sets) {
  return solve_adaptive_garo(sets).second <= 1.0 + 1e-9;
}

/// Monte-Carlo harness for the adaptive guarantee: Gaussian samples around
/// p_star, estimator family with geometric candidate scales κ_j = κ₀βʲ and
/// radii γ_N(δ,κ) = κ√(2 log(2(J+1)/δ)/N).
struct LepskiiSimConfig {
  double p_star = 0.0;
  double sigma = 1.0;
  int N = 200;
  int J = 6; // levels 0..J
  double beta = 2.0;
  double kappa0 = 1.0;
  double delta = 0.1;
  int trials = 500;
  unsigned long long seed = 0;
};

struct LepskiiSimResult {
  int trials = 0;
  int successes = 0; // |x_garo − p*| ≤ 2γ_{j*}
  double success_fraction() const {
    return trials > 0 ? static_cast<double>(successes) / trials : 0.0;
  }
};

inline LepskiiSimResult run_lepskii_simulation(const LepskiiSimConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> noise(0.0, cfg.sigma);
  const double margin = std::sqrt(2.0 * std::log(2.0 * (cfg.J + 1) / cfg.delta) / cfg.N);

  LepskiiSimResult res;
  res.trials = cfg.trials;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    double mean = 0.0;
    for (int i = 0; i < cfg.N; ++i) mean += cfg.p_star + noise(rng);
    mean /= cfg.N;

    EstimatorFamily fam;
    double kappa = cfg.kappa0;
    for (int j = 0; j <= cfg.J; ++j, kappa *= cfg.beta)
      fam.entries.push_back({mean, kappa * margin});
    const auto sets = build_nested_sets(fam);

    size_t jstar = sets.levels.size();
    for (size_t j = 0; j < sets.levels.size(); ++j)
      if (!sets.levels[j].empty) {
        jstar = j;
        break;
      }
    if (jstar == sets.levels.size()) continue; // no consistent level: failure
    const auto [x, alpha] = solve_adaptive_garo(sets);
    (void)alpha;
    if (std::abs(x - cfg.p_star) <= 2.0 * fam.entries[jstar].radius) ++res.successes;
  }
  return res;
}

} // namespace garo

#endif
