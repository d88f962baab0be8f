#include "doctest.h"

#include <cmath>

#include "weakinfo/catalog.hpp"
#include "weakinfo/error.hpp"
#include "weakinfo/pricing.hpp"

using namespace weakinfo;

namespace {

std::vector<Scenario> trinomial_panel() {
  return {{1.0, UtilityField::log(3), Measure::uniform(3)},
          {1.0, UtilityField::power(0.5, 3), Measure::uniform(3)},
          {2.0, UtilityField::log(3), Measure{0.5, 0.3, 0.2}}};
}

}  // namespace

TEST_CASE("trinomial price of the up-state indicator") {
  auto m = catalog::trinomial();
  Claim f(3);
  f << 1, 0, 0;
  SUBCASE("log utility") {
    PriceReport r = indifference_price(m, UtilityField::log(3), Measure::uniform(3), 1.0, f);
    CHECK(r.price == doctest::Approx(2.0 / 9).epsilon(1e-9));
    CHECK(r.y_star == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.martingale_certificate <= 1e-9);
    CHECK(r.definitional_check <= kDefinitionalTolerance);
    CHECK(r.probes.size() == kDefinitionalGrid.size());
    auto probe = uniqueness_probe(m, UtilityField::log(3), Measure::uniform(3), 1.0, f, r);
    CHECK(probe.singleton);
  }
  SUBCASE("square-root utility") {
    PriceReport r =
        indifference_price(m, UtilityField::power(0.5, 3), Measure::uniform(3), 1.0, f);
    CHECK(r.price == doctest::Approx(0.22654).epsilon(1e-4));
    CHECK(r.price == doctest::Approx(0.5 / (1.5 + 1.0 / std::sqrt(2.0))).epsilon(1e-9));
    CHECK(r.definitional_check <= kDefinitionalTolerance);
  }
}

TEST_CASE("constant claims price at face value") {
  auto m = catalog::trinomial();
  for (const auto& s : trinomial_panel()) {
    auto r = representation_price(m, s.utility, s.measure, s.x, Claim::Constant(3, 1.7));
    CHECK(r.price == doctest::Approx(1.7).epsilon(1e-12));
  }
}

TEST_CASE("invariance of the traded asset and failure for the indicator") {
  auto m = catalog::trinomial();
  Claim s1(3);
  s1 << 2, 1, 0.5;
  auto inv = invariance_check(s1, trinomial_panel(), m);
  CHECK(inv.invariant);
  for (double p : inv.prices) CHECK(p == doctest::Approx(1.0).epsilon(1e-10));

  Claim f(3);
  f << 1, 0, 0;
  auto two = trinomial_panel();
  two.pop_back();
  auto res = invariance_check(f, two, m);
  CHECK_FALSE(res.invariant);
  CHECK(res.spread == doctest::Approx(0.00432).epsilon(5e-3));
}

TEST_CASE("binomial claims are invariant") {
  auto m = catalog::binomial();
  std::vector<Scenario> panel{{1.0, UtilityField::log(2), Measure{0.5, 0.5}},
                              {3.0, UtilityField::power(-1.0, 2), Measure{0.9, 0.1}}};
  Claim f(2);
  f << -3.0, 4.0;
  auto res = invariance_check(f, panel, m);
  CHECK(res.invariant);
  CHECK(res.prices[0] == doctest::Approx(-3.0 / 3 + 4.0 * 2 / 3).epsilon(1e-10));
}

TEST_CASE("invariant basis in the trinomial is the plane orthogonal to (-0.5, 1.5, -1)") {
  auto m = catalog::trinomial();
  InvariantBasis b = invariant_claim_basis(m, trinomial_panel());
  CHECK_FALSE(b.inconclusive);
  REQUIRE(b.basis.cols() == 2);
  Eigen::Vector3d normal(-0.5, 1.5, -1.0);
  CHECK((b.basis.transpose() * normal).norm() < 1e-8);
  Eigen::Vector3d ones(1, 1, 1);
  CHECK((ones - b.basis * (b.basis.transpose() * ones)).norm() < 1e-8);
}

TEST_CASE("binomial basis is the full claim space") {
  auto m = catalog::binomial();
  InvariantBasis b = invariant_claim_basis(m, {{1.0, UtilityField::log(2), Measure{0.5, 0.5}},
                                               {1.0, UtilityField::log(2), Measure{0.2, 0.8}}});
  CHECK_FALSE(b.inconclusive);
  CHECK(b.basis.cols() == 2);
}

TEST_CASE("two-factor basis is flagged but contains the untraded indicator") {
  auto m = catalog::two_factor();
  std::vector<Scenario> panel;
  for (double pw : {0.3, 0.7})
    panel.push_back({1.0, UtilityField::log(4), catalog::two_factor_measure(pw)});
  InvariantBasis b = invariant_claim_basis(m, panel);
  CHECK(b.inconclusive);
  CHECK(b.basis.cols() == 4);
  CHECK_THROWS_AS(invariant_claim_basis_strict(m, panel), LabError);
}

TEST_CASE("call priced through the numeraire change matches replication") {
  auto m = catalog::binomial();
  Claim call(2);
  call << 1.0, 0.0;
  auto rep = is_replicable(call, m);
  REQUIRE(rep);
  for (double x : {0.5, 1.0, 2.0}) {
    double p = numeraire_price(m, 0, UtilityField::power(0.5, 2), Measure{0.4, 0.6}, x, call);
    CHECK(p == doctest::Approx(rep->cost).epsilon(1e-9));
  }
  auto tree = catalog::binomial_tree(2, 1.5, 0.8);
  Eigen::VectorXd st = tree.terminal_prices(0);
  Claim c2 = (st.array() - 1.0).max(0.0).matrix();
  auto rep2 = is_replicable(c2, tree);
  REQUIRE(rep2);
  double p2 = numeraire_price(tree, 0, UtilityField::log(4), Measure::uniform(4), 1.0, c2);
  CHECK(p2 == doctest::Approx(rep2->cost).epsilon(1e-9));
}
