#include "doctest.h"

#include <cmath>

#include "../support/oracles.hpp"
#include "weakinfo/catalog.hpp"
#include "weakinfo/duality.hpp"
#include "weakinfo/error.hpp"

using namespace weakinfo;

namespace {

const Eigen::Vector3d kTri(2.0, 1.0, 0.5);

double max_abs_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("trinomial dual optimum against the one-dimensional oracle") {
  auto m = catalog::trinomial();
  const Eigen::Vector3d p = Eigen::Vector3d::Constant(1.0 / 3);
  SUBCASE("log") {
    Eigen::Vector3d ref = oracle::trinomial_dual(kTri, p, oracle::conj_log, 1.0);
    CHECK(std::abs(ref(2) - 4.0 / 9) < 1e-8);
    DualSolution s = solve_dual(m, UtilityField::log(3), Measure::uniform(3), 1.0);
    CHECK(max_abs_diff(s.q_hat.weights(), Eigen::Vector3d(2.0 / 9, 1.0 / 3, 4.0 / 9)) < 1e-10);
    CHECK(max_abs_diff(s.q_hat.weights(), ref) < 1e-7);
    CHECK_FALSE(s.boundary_flag);
    CHECK(s.diagnostics.feasibility < 1e-10);
    CHECK(s.diagnostics.stationarity < 1e-8);
  }
  SUBCASE("square root") {
    auto v = [](double y) { return oracle::conj_power(0.5, y); };
    for (double y : {0.5, 1.0, 3.0}) {
      Eigen::Vector3d ref = oracle::trinomial_dual(kTri, p, v, y);
      DualSolution s = solve_dual(m, UtilityField::power(0.5, 3), Measure::uniform(3), y);
      CHECK(max_abs_diff(s.q_hat.weights(), ref) < 1e-7);
      CHECK(s.q_hat[0] == doctest::Approx(0.22654).epsilon(1e-4));
      CHECK(s.q_hat[1] == doctest::Approx(0.32038).epsilon(1e-4));
      CHECK(s.q_hat[2] == doctest::Approx(0.45308).epsilon(1e-4));
      // stationarity sqrt(2)(1 - 1.5 q3) = q3
      CHECK(std::sqrt(2.0) * (1 - 1.5 * s.q_hat[2]) == doctest::Approx(s.q_hat[2]).epsilon(1e-9));
    }
  }
  SUBCASE("negative power under a skewed measure") {
    Eigen::Vector3d pp(0.5, 0.3, 0.2);
    auto v = [](double y) { return oracle::conj_power(-1.0, y); };
    Eigen::Vector3d ref = oracle::trinomial_dual(kTri, pp, v, 2.0);
    DualSolution s = solve_dual(m, UtilityField::power(-1.0, 3), Measure(Eigen::VectorXd(pp)), 2.0);
    CHECK(max_abs_diff(s.q_hat.weights(), ref) < 1e-7);
  }
}

TEST_CASE("binomial dual is the unique martingale measure") {
  auto m = catalog::binomial();
  for (const auto& u : {UtilityField::log(2), UtilityField::power(0.5, 2), UtilityField::power(-3.0, 2)})
    for (double y : {0.1, 1.0, 10.0}) {
      DualSolution s = solve_dual(m, u, Measure{0.7, 0.3}, y);
      CHECK(s.q_hat[0] == doctest::Approx(1.0 / 3).epsilon(1e-12));
    }
}

TEST_CASE("primal examples") {
  auto tri = catalog::trinomial();
  PrimalSolution s = solve_primal(tri, UtilityField::log(3), Measure::uniform(3), 1.0);
  CHECK(s.y_star == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(max_abs_diff(s.terminal_wealth, Eigen::Vector3d(1.5, 1.0, 0.75)) < 1e-9);
  CHECK(s.value == doctest::Approx(std::log(9.0 / 8) / 3).epsilon(1e-10));
  CHECK(s.value == doctest::Approx(0.039221).epsilon(1e-4));
  REQUIRE(s.strategy.has_value());
  CHECK(max_abs_diff(terminal_values(wealth_process(1.0, *s.strategy, tri), tri.space()), s.terminal_wealth) < 1e-9);
  CHECK(s.budget_residual < 1e-9);

  auto bin = catalog::binomial();
  PrimalSolution b = solve_primal(bin, UtilityField::log(2), Measure{0.5, 0.5}, 1.0);
  CHECK(max_abs_diff(b.terminal_wealth, Eigen::Vector2d(1.5, 0.75)) < 1e-9);
  CHECK(b.value == doctest::Approx(0.5 * std::log(9.0 / 8)).epsilon(1e-10));
  REQUIRE(b.strategy.has_value());
  Eigen::VectorXd t = terminal_values(wealth_process(1.0, *b.strategy, bin), bin.space());
  CHECK(max_abs_diff(t, b.terminal_wealth) < 1e-9);

  for (const auto& model : {tri, bin, catalog::two_factor(), catalog::binomial_tree(2, 1.5, 0.8)}) {
    const std::size_t n = model.num_outcomes();
    const Measure p = Measure::uniform(n);
    for (double x : {0.3, 1.0, 4.0}) {
      const double u1 = solve_primal(model, UtilityField::log(n), p, x).value;
      const double u2 = solve_primal(model, UtilityField::log(n), p, 2 * x).value;
      CHECK(u2 == doctest::Approx(u1 + std::log(2.0)).epsilon(1e-10));
      PrimalSolution ps = solve_primal(model, UtilityField::power(-1.0, n), p, x);
      CHECK(ps.dual.q_hat.weights().dot(ps.terminal_wealth) == doctest::Approx(x).epsilon(1e-9));
      for (std::size_t w = 0; w < n; ++w)
        CHECK(ps.terminal_wealth(static_cast<Eigen::Index>(w)) ==
              doctest::Approx(inverse_marginal(UtilityField::power(-1.0, n), w,
                                               ps.y_star * ps.dual.z_hat.values(static_cast<Eigen::Index>(w))))
                  .epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(solve_primal(tri, UtilityField::log(3), Measure::uniform(3), 0.0), LabError);
}

TEST_CASE("conjugacy gap examples") {
  auto tri = catalog::trinomial();
  CHECK(std::abs(conjugacy_gap(tri, UtilityField::log(3), Measure::uniform(3), 1.0, {1.0})) < 1e-8);
  auto bin = catalog::binomial();
  for (const auto& u : {UtilityField::log(2), UtilityField::power(0.5, 2), UtilityField::power(-1.0, 2)})
    CHECK(std::abs(conjugacy_gap(bin, u, Measure{0.4, 0.6}, 1.5, {})) < 1e-8);
  // A grid away from y* only bounds from above, so the gap is negative.
  const std::vector<double> grid{0.2, 0.5, 3.0};
  CHECK(conjugacy_gap(tri, UtilityField::power(0.5, 3), Measure::uniform(3), 1.0, grid) <= 1e-8);
}

TEST_CASE("value functions: monotone, curved, and u' = y*") {
  auto tri = catalog::trinomial();
  const Measure p{0.5, 0.3, 0.2};
  const UtilityField u = UtilityField::power(0.5, 3);
  std::vector<double> us;
  for (double x : {0.5, 1.0, 1.5, 2.0, 2.5}) us.push_back(solve_primal(tri, u, p, x).value);
  for (std::size_t i = 1; i < us.size(); ++i) CHECK(us[i] > us[i - 1]);
  for (std::size_t i = 1; i + 1 < us.size(); ++i) CHECK(us[i + 1] - us[i] < us[i] - us[i - 1]);
  for (double x : {0.7, 1.3}) {
    const double fd = oracle::derivative([&](double t) { return solve_primal(tri, u, p, t).value; }, x, 1e-4);
    CHECK(fd == doctest::Approx(solve_primal(tri, u, p, x).y_star).epsilon(1e-5));
  }
  std::vector<double> vs;
  for (double y : {0.5, 1.0, 1.5, 2.0, 2.5}) vs.push_back(solve_dual(tri, u, p, y).value);
  for (std::size_t i = 1; i < vs.size(); ++i) CHECK(vs[i] < vs[i - 1]);
  for (std::size_t i = 1; i + 1 < vs.size(); ++i) CHECK(vs[i + 1] - vs[i] > vs[i] - vs[i - 1]);
}

TEST_CASE("dual posed under P^n equals the density-composed dual under P") {
  auto tri = catalog::trinomial();
  const Measure p = Measure::uniform(3);
  const Measure pn{0.45, 0.25, 0.3};
  const Density z = density(pn, p);
  for (const auto& u : {UtilityField::log(3), UtilityField::power(0.5, 3), UtilityField::power(-1.0, 3)}) {
    DualSolution direct = solve_dual(tri, u, pn, 1.3);
    DualSolution composed = solve_dual_composed(tri, u, p, z, 1.3);
    CHECK(max_abs_diff(direct.q_hat.weights(), composed.q_hat.weights()) < 1e-9);
    CHECK(direct.value == doctest::Approx(composed.value).epsilon(1e-12));
  }
  // E_{P^n}[X] computed directly and as E_P[Z X].
  Eigen::Vector3d x(0.3, -1.2, 4.0);
  CHECK(std::abs(expectation(x, pn) - expectation(z.values.cwiseProduct(x), p)) < 1e-12);
}

TEST_CASE("dual optimum does not depend on the starting point") {
  auto m = catalog::one_period({1.6, 1.2, 0.9, 0.7});
  const Measure p{0.1, 0.4, 0.3, 0.2};
  DualProblem dp(m, UtilityField::power(-2.0, 4), p);
  DualSolution a = dp.solve(0.8);
  const Eigen::VectorXd& center = dp.polytope().interior_point();
  for (const auto& v : dp.polytope().vertices()) {
    Eigen::VectorXd start = 0.9 * v + 0.1 * center;
    DualSolution b = dp.solve(0.8, &start);
    CHECK(max_abs_diff(a.q_hat.weights(), b.q_hat.weights()) < 1e-8);
  }
}

TEST_CASE("endowment problem examples") {
  auto tri = catalog::trinomial();
  const Measure p = Measure::uniform(3);
  const UtilityField u = UtilityField::log(3);
  const double u1 = solve_primal(tri, u, p, 1.0).value;
  CHECK(primal_with_endowment(tri, u, p, 1.0, 0.0, Claim::Zero(3)) == doctest::Approx(u1).epsilon(1e-8));

  Claim s1(3);
  s1 << 2, 1, 0.5;
  for (double q : {-1.0, 1.0})
    CHECK(primal_with_endowment(tri, u, p, 2.0 - q * 1.0, q, s1) ==
          doctest::Approx(solve_primal(tri, u, p, 2.0).value).epsilon(1e-8));

  Claim ind(3);
  ind << 1, 0, 0;
  CHECK(primal_with_endowment(tri, u, p, 1.0 - 2.0 / 9, 1.0, ind) <= u1 + 1e-9);
  // No feasible wealth: every strategy leaves some atom negative.
  CHECK(std::isinf(primal_with_endowment(tri, u, p, 0.1, -1.0, Claim::Constant(3, 1.0))));

  auto tree = catalog::binomial_tree(2, 1.5, 0.8);
  const Measure p4{0.1, 0.2, 0.3, 0.4};
  for (const auto& uu : {UtilityField::log(4), UtilityField::power(0.5, 4), UtilityField::power(-1.0, 4)})
    CHECK(primal_with_endowment(tree, uu, p4, 1.2, 0.0, Claim::Zero(4)) ==
          doctest::Approx(solve_primal(tree, uu, p4, 1.2).value).epsilon(1e-8));
}

TEST_CASE("arbitrage is rejected by the dual") {
  CHECK_THROWS_AS(solve_dual(catalog::one_period({2.0, 1.5}), UtilityField::log(2), Measure{0.5, 0.5}, 1.0),
                  LabError);
}

TEST_CASE("affine wrap: constant scale keeps the optimiser, outcome-varying scale moves it") {
  auto tri = catalog::trinomial();
  const Measure p = Measure::uniform(3);
  PrimalSolution base = solve_primal(tri, UtilityField::log(3), p, 1.0);
  UtilityField scaled = UtilityField::deterministic({UtilityFamily::kLog, 0.0, 3.0, 2.0}, 3);
  PrimalSolution s = solve_primal(tri, scaled, p, 1.0);
  CHECK(max_abs_diff(s.terminal_wealth, base.terminal_wealth) < 1e-9);
  CHECK(s.value == doctest::Approx(3.0 * base.value + 2.0).epsilon(1e-10));

  UtilityField varied({{UtilityFamily::kLog, 0.0, 3.0, 0.0}, UtilityAtom::log(), UtilityAtom::log()});
  PrimalSolution v = solve_primal(tri, varied, p, 1.0);
  CHECK(max_abs_diff(v.terminal_wealth, base.terminal_wealth) > 1e-3);
  // The base optimiser is feasible for the varied problem but not optimal.
  double at_base = 0.0;
  for (std::size_t w = 0; w < 3; ++w) at_base += p[w] * varied.value(w, base.terminal_wealth(static_cast<Eigen::Index>(w)));
  CHECK(at_base < v.value);
}
