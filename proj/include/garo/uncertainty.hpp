#ifndef GARO_UNCERTAINTY_HPP
#define GARO_UNCERTAINTY_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "garo/core.hpp"

namespace garo {

enum class NormKind { L1, L2, Linf };

inline double norm_value(NormKind k, const Vector& v) {
  switch (k) {
    case NormKind::L1: return v.lpNorm<1>();
    case NormKind::L2: return v.norm();
    default: return v.lpNorm<Eigen::Infinity>();
  }
}

inline NormKind dual_norm(NormKind k) {
  switch (k) {
    case NormKind::L1: return NormKind::Linf;
    case NormKind::Linf: return NormKind::L1;
    default: return NormKind::L2;
  }
}

/// P_γ = {p : ‖p − p0‖ ≤ γ}.
struct NormBallModel {
  Vector p0;
  NormKind norm = NormKind::L2;
};

/// P_γ = {p : (p − p0)ᵀΣ̃⁻¹(p − p0) ≤ γ} — γ bounds the SQUARED Mahalanobis
/// distance, so worst-case costs carry √γ.
struct EllipsoidalModel {
  Vector p0;
  Matrix sigma; // Σ̃, PSD with λ_min ≥ 1e-4 after regularization
};

/// Finite scenario list, no metric: worst case is the max over all points.
struct DiscreteScenariosModel {
  std::vector<Vector> points;
};

/// KL ball around discrete P0: {P : KL(P0, P) ≤ γ²}. `losses(x)` returns the
/// per-scenario loss table ℓ(x, ξ_i).
struct KLBallModel {
  std::function<Vector(const Vector&)> losses;
  Vector p0_weights;
};

using UncertaintyModel =
    std::variant<NormBallModel, EllipsoidalModel, DiscreteScenariosModel, KLBallModel>;

struct GammaInterval {
  double lo = 0.0;
  double hi = 0.0;

  GammaInterval(double l, double h) : lo(l), hi(h) {
    if (!(l >= 0.0 && h >= l)) throw std::invalid_argument("GammaInterval: need 0 <= lo <= hi");
  }
};

namespace detail {

// Dual objective g(α) = α − exp(−γ²)·Πᵢ(α−ℓᵢ)^{P0ᵢ} for α > ℓmax, minimized by
// bisection on its derivative (the paper says only "bisection search").
inline double kl_worst_case(const KLBallModel& m, const Vector& x, double gamma) {
  const Vector ell = m.losses(x);
  if (ell.size() != m.p0_weights.size())
    throw std::invalid_argument("worst_case_cost: KL loss table size mismatch");
  const double lmax = ell.maxCoeff(), lmin = ell.minCoeff();
  if (lmax - lmin <= 1e-14) return lmax; // degenerate: all losses equal
  if (gamma == 0.0) return m.p0_weights.dot(ell);

  const double damp = std::exp(-gamma * gamma);
  const auto logprod = [&](double a) {
    double s = 0.0;
    for (int i = 0; i < ell.size(); ++i)
      if (m.p0_weights[i] > 0.0) s += m.p0_weights[i] * std::log(a - ell[i]);
    return s;
  };
  const auto g = [&](double a) { return a - damp * std::exp(logprod(a)); };
  const auto gprime = [&](double a) {
    double inv = 0.0;
    for (int i = 0; i < ell.size(); ++i)
      if (m.p0_weights[i] > 0.0) inv += m.p0_weights[i] / (a - ell[i]);
    return 1.0 - damp * std::exp(logprod(a)) * inv;
  };

  double alo = lmax + 1e-12;
  double ahi = lmax + 10.0 * (lmax - lmin) + 1.0;
  if (gprime(alo) > 0.0) return g(alo); // infimum attained in the limit α↓ℓmax
  if (gprime(ahi) < 0.0) return g(ahi); // bracket cap (γ≈0 asymptote)
  while (ahi - alo > 1e-10 * (1.0 + std::abs(ahi))) {
    const double mid = 0.5 * (alo + ahi);
    (gprime(mid) < 0.0 ? alo : ahi) = mid;
  }
  return g(0.5 * (alo + ahi));
}

} // namespace detail

/// v_wc(x,γ) = max over P_γ of xᵀp (expected loss for KLBall).
inline double worst_case_cost(const UncertaintyModel& model, const Vector& x, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("worst_case_cost: gamma < 0");
  return std::visit(
      [&](const auto& m) -> double {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, NormBallModel>) {
          return x.dot(m.p0) + gamma * norm_value(dual_norm(m.norm), x);
        } else if constexpr (std::is_same_v<M, EllipsoidalModel>) {
          return x.dot(m.p0) + std::sqrt(gamma) * std::sqrt(x.dot(m.sigma * x));
        } else if constexpr (std::is_same_v<M, DiscreteScenariosModel>) {
          if (m.points.empty())
            throw std::invalid_argument("worst_case_cost: empty scenario list");
          double best = -kInf;
          for (const auto& p : m.points) best = std::max(best, x.dot(p));
          return best;
        } else {
          return detail::kl_worst_case(m, x, gamma);
        }
      },
      model);
}

/// Smallest radius whose set P_γ covers at least ρ·N data points
/// (nearest-rank over the per-point radius statistic).
inline double calibrate_gamma(const UncertaintyModel& model, const std::vector<Vector>& data,
                              double rho) {
  if (data.empty()) throw std::invalid_argument("calibrate_gamma: empty data");
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("calibrate_gamma: rho in [0,1)");
  const int k = static_cast<int>(std::ceil(rho * static_cast<double>(data.size())));
  if (k == 0) return 0.0;

  std::vector<double> stat;
  stat.reserve(data.size());
  if (const auto* e = std::get_if<EllipsoidalModel>(&model)) {
    const Eigen::LDLT<Matrix> ldlt(e->sigma);
    for (const auto& p : data) {
      const Vector d = p - e->p0;
      stat.push_back(d.dot(ldlt.solve(d)));
    }
  } else if (const auto* nb = std::get_if<NormBallModel>(&model)) {
    for (const auto& p : data) stat.push_back(norm_value(nb->norm, p - nb->p0));
  } else {
    throw std::invalid_argument("calibrate_gamma: model carries no per-point statistic");
  }
  std::nth_element(stat.begin(), stat.begin() + (k - 1), stat.end());
  return stat[static_cast<size_t>(k - 1)];
}

/// Σ if λ_min(Σ) ≥ 1e-4, else Σ + 1e-4·I.
inline Matrix regularize_covariance(const Matrix& sigma) {
  if (sigma.rows() != sigma.cols())
    throw std::invalid_argument("regularize_covariance: not square");
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("regularize_covariance: not symmetric");
  const Eigen::SelfAdjointEigenSolver<Matrix> es(sigma, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() >= 1e-4) return sigma;
  return sigma + 1e-4 * Matrix::Identity(sigma.rows(), sigma.cols());
}

/// D(γ) = D ∩ P_γ under the Ellipsoidal statistic (§6.1 scenario filter for
/// RO_d / REG).
inline std::vector<Vector> filter_scenarios(const EllipsoidalModel& model,
                                            const std::vector<Vector>& data, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("filter_scenarios: gamma < 0");
  const Eigen::LDLT<Matrix> ldlt(model.sigma);
  std::vector<Vector> kept;
  for (const auto& p : data) {
    const Vector d = p - model.p0;
    if (d.dot(ldlt.solve(d)) <= gamma) kept.push_back(p);
  }
  return kept;
}

} // namespace garo

#endif
