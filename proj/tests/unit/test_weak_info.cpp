#include "doctest.h"

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "weakinfo/catalog.hpp"
#include "weakinfo/duality.hpp"
#include "weakinfo/error.hpp"
#include "weakinfo/weak_info.hpp"

using namespace weakinfo;

TEST_CASE("minimal measure examples") {
  const Measure p{0.2, 0.5, 0.3};
  RandomElement y({0, 1, 0}, 2);
  CHECK((minimal_measure(p, y, Law(y.law_under(p))).weights() - p.weights()).cwiseAbs().maxCoeff() < 1e-15);

  RandomElement id = RandomElement::identity(3);
  Measure pn = minimal_measure(Measure::uniform(3), id, Law{0.5, 0.3, 0.2});
  CHECK(pn[0] == doctest::Approx(0.5));
  CHECK(pn[2] == doctest::Approx(0.2));
  CHECK(density(pn, Measure::uniform(3)).values(0) == doctest::Approx(1.5));

  RandomElement constant({0, 0, 0}, 1);
  CHECK((minimal_measure(p, constant, Law{1.0}).weights() - p.weights()).cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS(minimal_measure(p, y, Law{1.0, 0.0}), LabError);
  CHECK_THROWS_AS(minimal_measure(p, y, Law{0.2, 0.3, 0.5}), LabError);
  CHECK_THROWS_AS(RandomElement({0, 2, 0}, 3), LabError);
}

TEST_CASE("minimal measure: law, conditionals and idempotence on random triples") {
  std::mt19937_64 rng(17);
  std::gamma_distribution<double> g(1.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 2 + rng() % 7;
    const std::size_t labels = 1 + rng() % n;
    std::vector<std::size_t> lab(n);
    for (std::size_t i = 0; i < n; ++i) lab[i] = i < labels ? i : rng() % labels;
    Eigen::VectorXd pw(static_cast<Eigen::Index>(n)), nw(static_cast<Eigen::Index>(labels));
    for (auto& v : pw) v = g(rng) + 1e-3;
    for (auto& v : nw) v = g(rng) + 1e-3;
    pw /= pw.sum();
    nw /= nw.sum();
    Measure p(pw);
    Law nu(nw);
    RandomElement y(lab, labels);
    Measure pn = minimal_measure(p, y, nu);
    CHECK((pn.weights() - oracle::bayes_minimal_measure(pw, lab, nw)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((y.law_under(pn) - nw).cwiseAbs().maxCoeff() < 1e-15);
    for (std::size_t i = 0; i < n; ++i) {
      const double cp = p[i] / y.law_under(p)(static_cast<Eigen::Index>(lab[i]));
      const double cn = pn[i] / y.law_under(pn)(static_cast<Eigen::Index>(lab[i]));
      CHECK(cp == doctest::Approx(cn).epsilon(1e-13));
    }
    CHECK((minimal_measure(pn, y, nu).weights() - pn.weights()).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("perturbation sequence examples") {
  Law target = Law::uniform(3), start{0.5, 0.3, 0.2};
  auto seq = perturbation_sequence(target, target, 5);
  for (const auto& l : seq) CHECK(tv_distance(l, target) < 1e-15);

  Law nu10 = perturbed_law(target, start, 10);
  CHECK(nu10[0] == doctest::Approx(0.9 / 3 + 0.05));
  RandomElement id = RandomElement::identity(3);
  const Measure p = Measure::uniform(3);
  CHECK(tv_distance(minimal_measure(p, id, nu10), minimal_measure(p, id, target)) ==
        doctest::Approx(0.1 / 6));
  for (std::size_t n : {10u, 100u, 1000u}) {
    const double tv = tv_distance(minimal_measure(p, id, perturbed_law(target, start, n)), p);
    CHECK(tv <= (1.0 / n) * tv_distance(start, target) + 1e-15);
  }
  CHECK(perturbation_sequence(target, start, 7).size() == 7);
  CHECK_THROWS_AS(perturbed_law(target, Law{1.0, 0.0, 0.0}, 3), LabError);
}

TEST_CASE("value of weak information examples") {
  auto bin = catalog::binomial();
  const Measure p{0.5, 0.5};
  RandomElement y = RandomElement::from_values(bin.terminal_prices(0));
  const UtilityField u = UtilityField::log(2);
  CHECK(value_of_weak_information(bin, u, 1.0, y, Law{0.5, 0.5}, p) ==
        doctest::Approx(solve_primal(bin, u, p, 1.0).value).epsilon(1e-12));
  const double v = value_of_weak_information(bin, u, 1.0, y, Law{0.6, 0.4}, p);
  CHECK(v == doctest::Approx(0.6 * std::log(1.8) + 0.4 * std::log(0.6)).epsilon(1e-10));
  CHECK(v == doctest::Approx(0.14833).epsilon(1e-4));
  CHECK(value_of_weak_information(bin, u, 1.0, y, Law{0.99, 0.01}, p) >
        value_of_weak_information(bin, u, 1.0, y, Law{0.5, 0.5}, p));

  auto tri = catalog::trinomial();
  try {
    value_of_weak_information(tri, UtilityField::log(3), 1.0, RandomElement::identity(3),
                              Law::uniform(3), Measure::uniform(3));
    FAIL("expected CompletenessRequired");
  } catch (const LabError& e) {
    CHECK(e.code() == ErrorCode::kCompletenessRequired);
  }
}

TEST_CASE("value of weak information is continuous along a perturbation sequence") {
  auto bin = catalog::binomial();
  const Measure p{0.5, 0.5};
  RandomElement y = RandomElement::identity(2);
  const Law target{0.6, 0.4}, start{0.5, 0.5};
  const UtilityField u = UtilityField::power(0.5, 2);
  const double limit = value_of_weak_information(bin, u, 1.0, y, target, p);
  double prev = 1e300;
  for (std::size_t n : {10u, 30u, 100u, 300u, 1000u}) {
    const double gap =
        std::abs(value_of_weak_information(bin, u, 1.0, y, perturbed_law(target, start, n), p) - limit);
    CHECK(gap < prev);
    prev = gap;
  }
}
