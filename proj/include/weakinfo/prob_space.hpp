#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace weakinfo {

using NodeId = std::size_t;
inline constexpr NodeId kNoParent = std::numeric_limits<NodeId>::max();

// Tolerance used to accept a weight vector as a probability measure.
inline constexpr double kMeasureTolerance = 1e-12;

// Finite event tree. Node 0 is the root; the depth-t nodes generate the
// time-t sigma-algebra and the leaves, all at depth `horizon`, are the
// outcomes. Outcome i is `outcome_node(i)`; leaf order follows the
// outcome label list handed to the constructor.
class FiniteFilteredSpace {
 public:
  // `edges` are (parent, child) label pairs. Leaves must be exactly the
  // labels in `outcomes`.
  static FiniteFilteredSpace from_edges(
      std::vector<std::string> outcomes,
      const std::vector<std::pair<std::string, std::string>>& edges);

  // Full tree with `branching[t]` children for every depth-t node.
  static FiniteFilteredSpace uniform_tree(const std::vector<int>& branching);

  // One period, `n` outcomes.
  static FiniteFilteredSpace one_period(int n) { return uniform_tree({n}); }

  std::size_t num_nodes() const { return parent_.size(); }
  std::size_t num_outcomes() const { return outcome_node_.size(); }
  int horizon() const { return horizon_; }
  NodeId root() const { return 0; }

  NodeId parent(NodeId n) const { return parent_.at(n); }
  std::span<const NodeId> children(NodeId n) const { return children_.at(n); }
  int depth(NodeId n) const { return depth_.at(n); }
  bool is_terminal(NodeId n) const { return children_.at(n).empty(); }

  // Outcome indices of the leaves below `n`, ascending.
  std::span<const std::size_t> outcomes_below(NodeId n) const {
    return below_.at(n);
  }
  NodeId outcome_node(std::size_t outcome) const {
    return outcome_node_.at(outcome);
  }
  // Node at depth `t` on the path from the root to `outcome`.
  NodeId node_on_path(std::size_t outcome, int t) const;

  // Non-terminal nodes in breadth-first order (root first).
  const std::vector<NodeId>& decision_nodes() const { return decision_nodes_; }
  std::vector<NodeId> nodes_at_depth(int t) const;

  const std::string& label(NodeId n) const { return labels_.at(n); }
  const std::string& outcome_label(std::size_t i) const {
    return labels_.at(outcome_node_.at(i));
  }
  // Throws kInvalidSpace for unknown labels.
  NodeId node_index(const std::string& label) const;

  bool operator==(const FiniteFilteredSpace& other) const {
    return labels_ == other.labels_ && parent_ == other.parent_ &&
           outcome_node_ == other.outcome_node_;
  }

 private:
  FiniteFilteredSpace(std::vector<std::string> labels,
                      std::vector<NodeId> parent,
                      const std::vector<std::string>& outcomes);

  std::vector<std::string> labels_;
  std::vector<NodeId> parent_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<int> depth_;
  std::vector<std::vector<std::size_t>> below_;
  std::vector<NodeId> outcome_node_;
  std::vector<NodeId> decision_nodes_;
  int horizon_ = 0;
};

// Probability weights over outcomes. Inputs are validated, never
// renormalized: negative weights or a total off by more than
// kMeasureTolerance are rejected.
class Measure {
 public:
  explicit Measure(Eigen::VectorXd weights);
  Measure(std::initializer_list<double> weights);

  static Measure uniform(std::size_t n);
  // Convex combination (1 - t) * a + t * b.
  static Measure mixture(const Measure& a, const Measure& b, double t);

  std::size_t size() const { return static_cast<std::size_t>(w_.size()); }
  double operator[](std::size_t i) const { return w_(static_cast<Eigen::Index>(i)); }
  const Eigen::VectorXd& weights() const { return w_; }
  bool is_equivalent() const { return (w_.array() > 0.0).all(); }

 private:
  Eigen::VectorXd w_;
};

// dQ/dP per outcome.
struct Density {
  Eigen::VectorXd values;
};

Density density(const Measure& numerator, const Measure& base);

// Half the L1 distance.
double tv_distance(const Measure& p, const Measure& q);

double expectation(const Eigen::VectorXd& x, const Measure& p);

// P-weighted average of `x` over the leaves below `node`.
double conditional_expectation(const Eigen::VectorXd& x, NodeId node,
                               const FiniteFilteredSpace& space,
                               const Measure& p);

}  // namespace weakinfo
