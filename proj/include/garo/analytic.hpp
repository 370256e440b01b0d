#ifndef GARO_ANALYTIC_HPP
#define GARO_ANALYTIC_HPP

#include <cmath>
#include <stdexcept>

#include "garo/rate.hpp"
#include "garo/solve.hpp"

namespace garo {

/// Half-line Weber instance (§3 example): A(μ,γ) = (μ−γ)².
inline double weber_adversarial_regret(double mu, double gamma) {
  if (mu < 0.0 || gamma < 0.0)
    throw std::invalid_argument("weber_adversarial_regret: negative input");
  return (mu - gamma) * (mu - gamma);
}

struct WeberGaroResult {
  double mu_lo = 0.0, mu_hi = 0.0; // minimizer set (an interval for q = 2)
  double alpha = 0.0;
};

namespace detail {

// sup_{γ≥0} (μ−γ)²/(1+γ)^q. Two local maxima: γ=0 (value μ²) and an interior
// point beyond μ; the latter is located by golden-section on [μ, μ+2q].
inline double weber_alpha(double mu, double q) {
  const auto f = [&](double g) { return (mu - g) * (mu - g) / std::pow(1.0 + g, q); };
  double a = mu, b = mu + 2.0 * q;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-12 * (1.0 + b)) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    }
  }
  return std::max(mu * mu, f(0.5 * (a + b)));
}

} // namespace detail

/// GARO on the half-line Weber instance with rate (1+γ)^q: q=2 gives α=1 on
/// the whole interval [0,1]; q>2 gives the unique positive root of
/// μ²(1+μ)^{q−2} = 4(q−2)^{q−2}/q^q.
inline WeberGaroResult weber_garo(double q) {
  if (q < 2.0)
    throw std::invalid_argument("weber_garo: q < 2 (absolute rate infeasible on the half-line)");
  if (q == 2.0) return {0.0, 1.0, 1.0};

  const double rhs =
      4.0 * std::pow(q - 2.0, q - 2.0) / std::pow(q, q);
  const auto h = [&](double mu) { return mu * mu * std::pow(1.0 + mu, q - 2.0) - rhs; };
  double lo = 0.0, hi = 1.0;
  while (h(hi) < 0.0) hi *= 2.0; // h increasing from h(0) = −rhs < 0
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  const double mu = 0.5 * (lo + hi);
  return {mu, mu, detail::weber_alpha(mu, q)};
}

/// §5.1 regression example: two-point GARO for ‖A₀x−b‖ + γ‖x‖ over [0, γ_max].
inline std::pair<Vector, double> regression_two_point(const Matrix& A0, const Vector& b,
                                                      double gamma_max, const RateFunction& phi) {
  if (A0.rows() != b.size()) throw std::invalid_argument("regression_two_point: A0/b mismatch");
  if (gamma_max < 0.0) throw std::invalid_argument("regression_two_point: gamma_max < 0");
  if (!detail::rate_is_concave(phi))
    throw std::invalid_argument("regression_two_point: rate function must be concave");
  const int n = static_cast<int>(A0.cols());
  const int m = static_cast<int>(A0.rows());

  // v*(γ) = min_x ‖A₀x−b‖ + γ‖x‖ via (x, t₁ ≥ ‖A₀x−b‖, t₂ ≥ ‖x‖).
  const auto vstar = [&](double gamma) {
    ConicProgram prog(n + 2);
    prog.set_bounds(n, 0.0, kInf);
    prog.set_bounds(n + 1, 0.0, kInf);
    Matrix Ares = Matrix::Zero(m, n + 2);
    Ares.block(0, 0, m, n) = A0;
    Vector c1 = Vector::Zero(n + 2);
    c1[n] = 1.0;
    prog.add_soc(Ares, -b, c1, 0.0);
    Matrix Anorm = Matrix::Zero(n, n + 2);
    Anorm.block(0, 0, n, n) = Matrix::Identity(n, n);
    Vector c2 = Vector::Zero(n + 2);
    c2[n + 1] = 1.0;
    prog.add_soc(Anorm, Vector::Zero(n), c2, 0.0);
    Vector obj = Vector::Zero(n + 2);
    obj[n] = 1.0;
    obj[n + 1] = gamma;
    prog.set_objective(obj);
    const auto out = solve(prog);
    if (out.status != SolveStatus::Optimal)
      throw std::runtime_error(std::string("regression_two_point: solver returned ") +
                               to_string(out.status));
    return out;
  };

  const double v0 = vstar(0.0).objective_value;
  const double vmax = gamma_max > 0.0 ? vstar(gamma_max).objective_value : v0;

  // min α s.t. t₁ − v*(0) ≤ αφ(0), t₁ + γ_max·t₂ − v*(γ_max) ≤ αφ(γ_max).
  ConicProgram prog(n + 3); // (x, t₁, t₂, α)
  prog.set_bounds(n, 0.0, kInf);
  prog.set_bounds(n + 1, 0.0, kInf);
  prog.set_bounds(n + 2, 0.0, kInf);
  Matrix Ares = Matrix::Zero(m, n + 3);
  Ares.block(0, 0, m, n) = A0;
  Vector c1 = Vector::Zero(n + 3);
  c1[n] = 1.0;
  prog.add_soc(Ares, -b, c1, 0.0);
  Matrix Anorm = Matrix::Zero(n, n + 3);
  Anorm.block(0, 0, n, n) = Matrix::Identity(n, n);
  Vector c2 = Vector::Zero(n + 3);
  c2[n + 1] = 1.0;
  prog.add_soc(Anorm, Vector::Zero(n), c2, 0.0);
  Vector obj = Vector::Zero(n + 3);
  obj[n + 2] = 1.0;
  prog.set_objective(obj);

  Vector row0 = Vector::Zero(n + 3);
  row0[n] = 1.0;
  row0[n + 2] = -rate_eval(phi, 0.0);
  prog.add_linear(row0, Relation::LessEqual, v0);
  Vector row1 = Vector::Zero(n + 3);
  row1[n] = 1.0;
  row1[n + 1] = gamma_max;
  row1[n + 2] = -rate_eval(phi, gamma_max);
  prog.add_linear(row1, Relation::LessEqual, vmax);

  const auto out = solve(prog);
  if (out.status != SolveStatus::Optimal)
    throw std::runtime_error(std::string("regression_two_point: solver returned ") +
                             to_string(out.status));
  return {out.primal.head(n), out.primal[n + 2]};
}

} // namespace garo

#endif
