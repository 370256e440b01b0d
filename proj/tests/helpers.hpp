#ifndef GARO_TESTS_HELPERS_HPP
#define GARO_TESTS_HELPERS_HPP

#include <random>

#include "garo/problem.hpp"
#include "garo/uncertainty.hpp"

namespace garo_tests {

// The 2-D probability simplex {x >= 0, x1 + x2 = 1}.
inline garo::LinearDecisionProblem simplex2() {
  garo::Matrix A(2, 2);
  A << 1.0, 1.0, -1.0, -1.0;
  garo::Vector b(2);
  b << 1.0, -1.0;
  return garo::LinearDecisionProblem(A, b, garo::Vector::Zero(2), garo::Vector::Ones(2));
}

inline garo::NormBallModel simplex_l1_model() {
  garo::Vector p0(2);
  p0 << 1.0, 2.0;
  return {p0, garo::NormKind::L1};
}

// {x in [0,10]^2, x1 + x2 >= 1} with an identity ellipsoid around (1,2).
inline garo::LinearDecisionProblem corner2() {
  garo::Matrix A(1, 2);
  A << 1.0, 1.0;
  garo::Vector b(1);
  b << 1.0;
  return garo::LinearDecisionProblem(A, b, garo::Vector::Zero(2),
                                     garo::Vector::Constant(2, 10.0));
}

inline garo::EllipsoidalModel corner2_model() {
  garo::Vector p0(2);
  p0 << 1.0, 2.0;
  return {p0, garo::Matrix::Identity(2, 2)};
}

// Random bounded problem: box [0,1]^n with one covering row sum(x) >= 1.
inline garo::LinearDecisionProblem random_box_problem(int n) {
  garo::Matrix A = garo::Matrix::Ones(1, n);
  garo::Vector b(1);
  b << 1.0;
  return garo::LinearDecisionProblem(A, b, garo::Vector::Zero(n), garo::Vector::Ones(n));
}

inline garo::Vector random_positive_vector(std::mt19937_64& rng, int n, double lo = 0.5,
                                           double hi = 3.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  garo::Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

// A feasible point of random_box_problem: random box point pushed onto X.
inline garo::Vector random_feasible_box_point(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  garo::Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = u(rng);
  const double s = x.sum();
  if (s < 1.0) x /= (s > 0.0 ? s : 1.0); // scale up onto the covering constraint
  for (int i = 0; i < n; ++i) x[i] = std::min(x[i], 1.0);
  if (x.sum() < 1.0) x.setConstant(1.0); // degenerate fallback
  return x;
}

} // namespace garo_tests

#endif
