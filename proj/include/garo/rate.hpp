#ifndef GARO_RATE_HPP
#define GARO_RATE_HPP

#include <cmath>
#include <stdexcept>
#include <variant>
#include <vector>

#include "garo/core.hpp"
#include "garo/robust.hpp"

namespace garo {

struct ConstantRate {}; // φ ≡ 1

struct PowerRate { // φ(γ) = (1+γ)^q
  double q = 0.0;
};

struct OracleCostRate { // φ = v*_wc via a traced oracle path (relative rate)
  OraclePath path;
};

struct TabulatedRate { // piecewise-linear through sorted (γ, φ) knots
  std::vector<std::pair<double, double>> knots;
};

using RateFunction = std::variant<ConstantRate, PowerRate, OracleCostRate, TabulatedRate>;

inline double rate_eval(const RateFunction& phi, double gamma) {
  return std::visit(
      [&](const auto& f) -> double {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, ConstantRate>) {
          return 1.0;
        } else if constexpr (std::is_same_v<F, PowerRate>) {
          return std::pow(1.0 + gamma, f.q);
        } else if constexpr (std::is_same_v<F, OracleCostRate>) {
          return f.path.value_at(gamma);
        } else {
          const auto& k = f.knots;
          if (k.size() < 1) throw std::invalid_argument("rate_eval: empty table");
          if (gamma < k.front().first - 1e-12 || gamma > k.back().first + 1e-12)
            throw std::out_of_range("rate_eval: gamma outside tabulated hull");
          for (size_t i = 0; i + 1 < k.size(); ++i) {
            if (gamma <= k[i + 1].first) {
              const double w = k[i + 1].first - k[i].first;
              if (w <= 0.0) return k[i].second;
              const double s = (gamma - k[i].first) / w;
              return (1.0 - s) * k[i].second + s * k[i + 1].second;
            }
          }
          return k.back().second;
        }
      },
      phi);
}

namespace detail {

// max over [a,b] of Δγ − φ(γ) together with its argmax. Closed form per
// variant: Power uses the stationary point γ* = (Δ/q)^{1/(q−1)} − 1 (q > 1,
// Δ > 0) checked against the endpoints; the piecewise-linear variants take
// the max over knots inside [a,b] and the endpoints.
inline std::pair<double, double> interval_conjugate_argmax(const RateFunction& phi, double a,
                                                           double b, double delta) {
  if (!(a <= b)) throw std::invalid_argument("interval_conjugate: a > b");
  double best = -kInf, best_gamma = a;
  const auto consider = [&](double g) {
    const double v = delta * g - rate_eval(phi, g);
    if (v > best) {
      best = v;
      best_gamma = g;
    }
  };
  consider(a);
  consider(b);
  if (const auto* p = std::get_if<PowerRate>(&phi)) {
    if (p->q > 1.0 && delta > 0.0) {
      const double gs = std::pow(delta / p->q, 1.0 / (p->q - 1.0)) - 1.0;
      if (gs > a && gs < b) consider(gs);
    }
  } else if (const auto* t = std::get_if<TabulatedRate>(&phi)) {
    for (const auto& [g, v] : t->knots)
      if (g > a && g < b) consider(g);
  } else if (const auto* oc = std::get_if<OracleCostRate>(&phi)) {
    for (const auto& s : oc->path.segments)
      if (s.gamma_hi > a && s.gamma_hi < b) consider(s.gamma_hi);
  }
  return {best, best_gamma};
}

// Concavity check by nonincreasing slopes (second differences for the
// piecewise-linear variants).
inline bool rate_is_concave(const RateFunction& phi) {
  if (std::holds_alternative<ConstantRate>(phi)) return true;
  if (const auto* p = std::get_if<PowerRate>(&phi)) return p->q <= 1.0;
  if (const auto* oc = std::get_if<OracleCostRate>(&phi)) {
    for (size_t i = 0; i + 1 < oc->path.segments.size(); ++i)
      if (oc->path.segments[i + 1].slope > oc->path.segments[i].slope + 1e-9) return false;
    return true;
  }
  const auto& k = std::get<TabulatedRate>(phi).knots;
  double prev_slope = kInf;
  for (size_t i = 0; i + 1 < k.size(); ++i) {
    const double w = k[i + 1].first - k[i].first;
    if (w <= 0.0) continue;
    const double s = (k[i + 1].second - k[i].second) / w;
    if (s > prev_slope + 1e-9) return false;
    prev_slope = s;
  }
  return true;
}

} // namespace detail

/// φ*_t(Δ) = max_{γ∈[a,b]} Δγ − φ(γ) (Eq. (24) segment conjugate).
inline double interval_conjugate(const RateFunction& phi, double a, double b, double delta) {
  return detail::interval_conjugate_argmax(phi, a, b, delta).first;
}

/// Perspective α·φ*_t(Δ/α); at α=0 the recession value sup_{γ∈[a,b]} Δγ.
inline double perspective_conjugate(const RateFunction& phi, double a, double b, double delta,
                                    double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("perspective_conjugate: alpha < 0");
  if (alpha == 0.0) return std::max(delta * a, delta * b);
  return alpha * interval_conjugate(phi, a, b, delta / alpha);
}

} // namespace garo

#endif
