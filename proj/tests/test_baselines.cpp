#include <catch2/catch_amalgamated.hpp>

#include "garo/baselines.hpp"
#include "helpers.hpp"

using namespace garo;
using namespace garo_tests;

namespace {

std::vector<Vector> two_scenarios() {
  Vector a(2), b(2);
  a << 1.0, 2.0;
  b << 2.0, 1.0;
  return {a, b};
}

std::vector<double> dense_grid(double hi, int pts) {
  std::vector<double> g;
  for (int t = 0; t < pts; ++t) g.push_back(hi * t / (pts - 1));
  return g;
}

} // namespace

TEST_CASE("solve_ro delegates to the robust oracle") {
  const auto prob = simplex2();
  const UncertaintyModel m = simplex_l1_model();
  const auto [x0, v0] = solve_ro(prob, m, 0.0);
  CHECK(v0 == Catch::Approx(1.0).margin(1e-7));
  double prev = v0;
  for (const double g : {0.5, 1.0, 2.0}) {
    const double v = solve_ro(prob, m, g).second;
    CHECK(v >= prev - 1e-9);
    prev = v;
  }
}

TEST_CASE("discrete RO on two crossing scenarios") {
  const auto [x, v] = solve_ro_discrete(simplex2(), two_scenarios());
  CHECK(v == Catch::Approx(1.5).margin(1e-7));
  CHECK(x[0] == Catch::Approx(0.5).margin(1e-6));

  // Single scenario: nominal LP against it.
  const auto [xs, vs] = solve_ro_discrete(simplex2(), {two_scenarios()[0]});
  CHECK(vs == Catch::Approx(1.0).margin(1e-7));

  // Duplicates do not change the result.
  auto dup = two_scenarios();
  dup.push_back(dup[0]);
  CHECK(solve_ro_discrete(simplex2(), dup).second == Catch::Approx(1.5).margin(1e-7));

  CHECK_THROWS_AS(solve_ro_discrete(simplex2(), {}), std::invalid_argument);
}

TEST_CASE("satisficing on the simplex L1 instance") {
  const auto prob = simplex2();
  const UncertaintyModel m = simplex_l1_model();
  // v*(0)=1, so beta=1.2 gives f0=1.2 -> x=(0.8,0.2), alpha=0.8.
  const auto res = solve_satisficing(prob, m, {1.2, dense_grid(2.0, 101)});
  REQUIRE(res.status == SolveStatus::Optimal);
  CHECK(res.f0 == Catch::Approx(1.2).margin(1e-7));
  CHECK(res.x[0] == Catch::Approx(0.8).margin(1e-5));
  CHECK(res.alpha == Catch::Approx(0.8).margin(1e-5));
  CHECK(res.target_in_range);
}

TEST_CASE("satisficing with a fully robust target") {
  const auto prob = simplex2();
  const UncertaintyModel m = simplex_l1_model();
  // f0 = v*(2) = 2.5 -> alpha = 0 attainable by the robust solution.
  const auto res = solve_satisficing(prob, m, {2.5, dense_grid(2.0, 101)});
  REQUIRE(res.status == SolveStatus::Optimal);
  CHECK(res.alpha == Catch::Approx(0.0).margin(1e-6));
  CHECK(res.target_in_range); // f0 = v*(gamma_max) sits on the boundary
}

TEST_CASE("satisficing infeasible below the nominal optimum") {
  // Negative nominal value: beta > 1 pushes f0 strictly below v*(0).
  Matrix A(1, 2);
  A << 1.0, 1.0;
  Vector b(1);
  b << 1.0;
  LinearDecisionProblem prob(A, b, Vector::Zero(2), Vector::Ones(2));
  Vector p0(2);
  p0 << -2.0, -1.0;
  const UncertaintyModel m = NormBallModel{p0, NormKind::L1};
  const auto res = solve_satisficing(prob, m, {2.0, dense_grid(0.5, 26)});
  CHECK(res.status == SolveStatus::Infeasible);
  CHECK_THROWS_AS(solve_satisficing(prob, m, {0.5, dense_grid(0.5, 26)}),
                  std::invalid_argument); // beta < 1
}

TEST_CASE("regret baseline") {
  const auto [x, a] = solve_regret_discrete(simplex2(), two_scenarios());
  CHECK(a == Catch::Approx(0.5).margin(1e-7));
  CHECK(x[0] == Catch::Approx(0.5).margin(1e-6));

  const auto [xs, as] = solve_regret_discrete(simplex2(), {two_scenarios()[0]});
  CHECK(as == Catch::Approx(0.0).margin(1e-7));
  CHECK(xs[0] == Catch::Approx(1.0).margin(1e-6));

  const std::vector<Vector> equal(3, two_scenarios()[0]);
  CHECK(solve_regret_discrete(simplex2(), equal).second ==
        Catch::Approx(0.0).margin(1e-7));
  CHECK_THROWS_AS(solve_regret_discrete(simplex2(), {}), std::invalid_argument);
}

TEST_CASE("precomputed nominal optima match the direct overload") {
  const auto scen = two_scenarios();
  std::vector<double> m;
  for (const auto& p : scen) m.push_back(nominal_optimum(simplex2(), p));
  CHECK(m[0] == Catch::Approx(1.0).margin(1e-7));
  const auto direct = solve_regret_discrete(simplex2(), scen);
  const auto pre = solve_regret_discrete(simplex2(), scen, m);
  CHECK(direct.second == Catch::Approx(pre.second).margin(1e-9));
}

TEST_CASE("discrete RO value nondecreasing in the scenario set") {
  auto scen = two_scenarios();
  const double v2 = solve_ro_discrete(simplex2(), scen).second;
  Vector c(2);
  c << 2.5, 2.5;
  scen.push_back(c);
  CHECK(solve_ro_discrete(simplex2(), scen).second >= v2 - 1e-9);
}
