#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "weakinfo/prob_space.hpp"

namespace weakinfo {

// Payoff per outcome, in outcome order.
using Claim = Eigen::VectorXd;

// Selects the riskless asset in change_numeraire.
inline constexpr std::size_t kRiskless = std::numeric_limits<std::size_t>::max();

// Risky asset prices on every node of the tree. The riskless asset is
// implicit and equal to 1 everywhere.
class MarketModel {
 public:
  // prices[k](node) is the price of risky asset k at `node`; all prices
  // must be strictly positive and finite.
  MarketModel(FiniteFilteredSpace space, std::vector<Eigen::VectorXd> prices);

  const FiniteFilteredSpace& space() const { return space_; }
  std::size_t num_assets() const { return prices_.size(); }
  std::size_t num_outcomes() const { return space_.num_outcomes(); }
  double price(std::size_t asset, NodeId node) const {
    return prices_.at(asset)(static_cast<Eigen::Index>(node));
  }
  const Eigen::VectorXd& prices(std::size_t asset) const { return prices_.at(asset); }
  Eigen::VectorXd terminal_prices(std::size_t asset) const;

  // Number of scalar trading decisions: assets x decision nodes.
  std::size_t num_controls() const {
    return num_assets() * space_.decision_nodes().size();
  }
  // Terminal gains of unit positions: column (i * d + k) holds the
  // per-outcome gain of one unit of asset k held over the step after the
  // i-th decision node, so terminal wealth is x + G * vec(H).
  Eigen::MatrixXd gains_matrix() const;

 private:
  FiniteFilteredSpace space_;
  std::vector<Eigen::VectorXd> prices_;
};

// Predictable holdings: holdings[node] is the d-vector chosen at `node` and
// carried over the following step. Entries at terminal nodes are ignored.
struct Strategy {
  std::vector<Eigen::VectorXd> holdings;

  static Strategy zero(const MarketModel& model);
  static Strategy from_controls(const MarketModel& model,
                                const Eigen::VectorXd& controls);
  Eigen::VectorXd controls(const MarketModel& model) const;
};

// Wealth on every node of the self-financing portfolio started at `x`.
Eigen::VectorXd wealth_process(double x, const Strategy& strategy,
                               const MarketModel& model);

// Restriction of a node-indexed process to the outcomes.
Eigen::VectorXd terminal_values(const Eigen::VectorXd& node_values,
                                const FiniteFilteredSpace& space);

struct Replication {
  double cost = 0.0;
  Strategy strategy;
  double residual = 0.0;
};

// Node-by-node least-norm hedge. Returns nothing when the worst per-node
// residual is not strictly below 1e-9 * (1 + |f|_inf).
std::optional<Replication> is_replicable(const Claim& f, const MarketModel& model);

// Rows: one martingale condition per (decision node, asset), then the
// total-mass row. Unknowns are outcome probabilities.
struct MartingaleConstraints {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
};

// Throws kNoArbitrageViolation unless a strictly positive martingale
// measure exists.
MartingaleConstraints martingale_measure_constraints(const MarketModel& model);

// Feasible set {q >= 0 : A q = b}, with a strictly positive reference point
// (the analytic center) and an orthonormal basis of the null space of A.
class MartingalePolytope {
 public:
  explicit MartingalePolytope(const MarketModel& model);

  const MartingaleConstraints& constraints() const { return constraints_; }
  const Eigen::VectorXd& interior_point() const { return center_; }
  const Eigen::MatrixXd& kernel() const { return kernel_; }
  std::size_t dimension() const { return static_cast<std::size_t>(kernel_.cols()); }
  std::size_t num_outcomes() const { return static_cast<std::size_t>(center_.size()); }

  // max |A q - b|
  double residual(const Eigen::VectorXd& q) const;

  // Vertex enumeration by basis search; only for small outcome counts.
  std::vector<Eigen::VectorXd> vertices() const;

 private:
  MartingaleConstraints constraints_;
  Eigen::VectorXd center_;
  Eigen::MatrixXd kernel_;
  Eigen::Index rank_ = 0;
};

bool is_complete(const MarketModel& model);

// Expresses prices and the claim in units of `asset` (kRiskless leaves the
// model unchanged). The numeraire's own slot becomes the old riskless asset,
// 1 / S^k, so applying the map twice to the same slot is the identity.
std::pair<MarketModel, Claim> change_numeraire(const MarketModel& model,
                                               std::size_t asset,
                                               const Claim& f);

}  // namespace weakinfo
