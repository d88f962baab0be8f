#include "weakinfo/catalog.hpp"

namespace weakinfo::catalog {

MarketModel one_period(const std::vector<double>& terminal, double s0) {
  auto space = FiniteFilteredSpace::one_period(static_cast<int>(terminal.size()));
  Eigen::VectorXd prices(static_cast<Eigen::Index>(space.num_nodes()));
  prices(0) = s0;
  for (std::size_t i = 0; i < terminal.size(); ++i)
    prices(static_cast<Eigen::Index>(space.outcome_node(i))) = terminal[i];
  return MarketModel(std::move(space), {prices});
}

MarketModel trinomial(double s1, double s2, double s3) { return one_period({s1, s2, s3}); }

MarketModel binomial(double up, double down) { return one_period({up, down}); }

MarketModel binomial_tree(int periods, double up, double down) {
  auto space = FiniteFilteredSpace::uniform_tree(std::vector<int>(static_cast<std::size_t>(periods), 2));
  Eigen::VectorXd prices(static_cast<Eigen::Index>(space.num_nodes()));
  prices(0) = 1.0;
  for (NodeId n = 1; n < space.num_nodes(); ++n) {
    NodeId p = space.parent(n);
    const bool is_up = space.children(p)[0] == n;
    prices(static_cast<Eigen::Index>(n)) = prices(static_cast<Eigen::Index>(p)) * (is_up ? up : down);
  }
  return MarketModel(std::move(space), {prices});
}

MarketModel two_factor(double up, double down) { return one_period({up, up, down, down}); }

Measure two_factor_measure(double p_w, double p_b) {
  return Measure{p_w * p_b, p_w * (1.0 - p_b), (1.0 - p_w) * p_b, (1.0 - p_w) * (1.0 - p_b)};
}

}  // namespace weakinfo::catalog
