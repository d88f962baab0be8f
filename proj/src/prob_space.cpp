#include "weakinfo/prob_space.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "weakinfo/error.hpp"

namespace weakinfo {

FiniteFilteredSpace FiniteFilteredSpace::from_edges(
    std::vector<std::string> outcomes,
    const std::vector<std::pair<std::string, std::string>>& edges) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> index;
  std::vector<NodeId> parent;
  auto intern = [&](const std::string& s) {
    auto [it, inserted] = index.emplace(s, labels.size());
    if (inserted) {
      labels.push_back(s);
      parent.push_back(kNoParent);
    }
    return it->second;
  };
  for (const auto& [from, to] : edges) {
    NodeId a = intern(from);
    NodeId b = intern(to);
    if (a == b) throw LabError(ErrorCode::kInvalidSpace, "self-loop at " + from);
    if (parent[b] != kNoParent)
      throw LabError(ErrorCode::kInvalidSpace, "node '" + to + "' has two parents");
    parent[b] = a;
  }
  std::vector<NodeId> roots;
  for (NodeId n = 0; n < labels.size(); ++n)
    if (parent[n] == kNoParent) roots.push_back(n);
  if (roots.size() != 1)
    throw LabError(ErrorCode::kInvalidSpace,
                   "tree must have exactly one root, found " +
                       std::to_string(roots.size()));

  // Relabel so that the root is node 0 and nodes appear breadth-first.
  std::vector<std::vector<NodeId>> kids(labels.size());
  for (const auto& [from, to] : edges) kids[index[from]].push_back(index[to]);
  std::vector<NodeId> order;
  std::vector<bool> seen(labels.size(), false);
  std::deque<NodeId> queue{roots.front()};
  seen[roots.front()] = true;
  while (!queue.empty()) {
    NodeId n = queue.front();
    queue.pop_front();
    order.push_back(n);
    for (NodeId c : kids[n]) {
      if (seen[c]) throw LabError(ErrorCode::kInvalidSpace, "cycle in tree");
      seen[c] = true;
      queue.push_back(c);
    }
  }
  if (order.size() != labels.size())
    throw LabError(ErrorCode::kInvalidSpace, "tree is not connected");
  std::vector<NodeId> remap(labels.size());
  for (NodeId i = 0; i < order.size(); ++i) remap[order[i]] = i;
  std::vector<std::string> new_labels(labels.size());
  std::vector<NodeId> new_parent(labels.size(), kNoParent);
  for (NodeId old = 0; old < labels.size(); ++old) {
    new_labels[remap[old]] = labels[old];
    if (parent[old] != kNoParent) new_parent[remap[old]] = remap[parent[old]];
  }
  return FiniteFilteredSpace(std::move(new_labels), std::move(new_parent),
                             outcomes);
}

FiniteFilteredSpace FiniteFilteredSpace::uniform_tree(
    const std::vector<int>& branching) {
  if (branching.empty())
    throw LabError(ErrorCode::kInvalidSpace, "horizon must be at least 1");
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> frontier{"r"};
  for (int b : branching) {
    if (b < 1) throw LabError(ErrorCode::kInvalidSpace, "branching must be >= 1");
    std::vector<std::string> next;
    for (const auto& node : frontier)
      for (int k = 0; k < b; ++k) {
        next.push_back(node + "." + std::to_string(k));
        edges.emplace_back(node, next.back());
      }
    frontier = std::move(next);
  }
  return from_edges(frontier, edges);
}

FiniteFilteredSpace::FiniteFilteredSpace(std::vector<std::string> labels,
                                         std::vector<NodeId> parent,
                                         const std::vector<std::string>& outcomes)
    : labels_(std::move(labels)), parent_(std::move(parent)) {
  const std::size_t n = labels_.size();
  children_.assign(n, {});
  depth_.assign(n, 0);
  for (NodeId i = 1; i < n; ++i) {
    children_[parent_[i]].push_back(i);
    depth_[i] = depth_[parent_[i]] + 1;  // parents precede children (BFS)
  }
  std::unordered_map<std::string, NodeId> index;
  for (NodeId i = 0; i < n; ++i) index.emplace(labels_[i], i);

  if (outcomes.size() < 2)
    throw LabError(ErrorCode::kInvalidSpace, "at least 2 outcomes required");
  std::vector<bool> is_outcome(n, false);
  for (const auto& o : outcomes) {
    auto it = index.find(o);
    if (it == index.end())
      throw LabError(ErrorCode::kInvalidSpace, "outcome '" + o + "' is not a tree node");
    if (is_outcome[it->second])
      throw LabError(ErrorCode::kInvalidSpace, "duplicate outcome '" + o + "'");
    is_outcome[it->second] = true;
    outcome_node_.push_back(it->second);
  }
  for (NodeId i = 0; i < n; ++i) {
    if (children_[i].empty() != is_outcome[i])
      throw LabError(ErrorCode::kInvalidSpace,
                     "node '" + labels_[i] +
                         (is_outcome[i] ? "' is an outcome but has children"
                                        : "' is a leaf but not an outcome"));
  }
  horizon_ = depth_[outcome_node_.front()];
  for (NodeId leaf : outcome_node_)
    if (depth_[leaf] != horizon_)
      throw LabError(ErrorCode::kInvalidSpace, "leaves must share one depth");
  if (horizon_ < 1)
    throw LabError(ErrorCode::kInvalidSpace, "horizon must be at least 1");

  below_.assign(n, {});
  for (std::size_t o = 0; o < outcome_node_.size(); ++o)
    for (NodeId m = outcome_node_[o]; m != kNoParent; m = parent_[m])
      below_[m].push_back(o);
  for (NodeId i = 0; i < n; ++i)
    if (!children_[i].empty()) decision_nodes_.push_back(i);
}

NodeId FiniteFilteredSpace::node_on_path(std::size_t outcome, int t) const {
  NodeId m = outcome_node_.at(outcome);
  while (depth_[m] > t) m = parent_[m];
  return m;
}

std::vector<NodeId> FiniteFilteredSpace::nodes_at_depth(int t) const {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < depth_.size(); ++i)
    if (depth_[i] == t) out.push_back(i);
  return out;
}

NodeId FiniteFilteredSpace::node_index(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end())
    throw LabError(ErrorCode::kInvalidSpace, "unknown node '" + label + "'");
  return static_cast<NodeId>(it - labels_.begin());
}

Measure::Measure(Eigen::VectorXd weights) : w_(std::move(weights)) {
  if (w_.size() == 0) throw LabError(ErrorCode::kInvalidMeasure, "empty measure");
  for (Eigen::Index i = 0; i < w_.size(); ++i)
    if (!std::isfinite(w_(i)) || w_(i) < 0.0)
      throw LabError(ErrorCode::kInvalidMeasure,
                     "weight " + std::to_string(i) + " is negative or not finite");
  if (std::abs(w_.sum() - 1.0) > kMeasureTolerance)
    throw LabError(ErrorCode::kInvalidMeasure,
                   "weights sum to " + std::to_string(w_.sum()) + ", not 1");
}

Measure::Measure(std::initializer_list<double> weights)
    : Measure(Eigen::Map<const Eigen::VectorXd>(
          weights.begin(), static_cast<Eigen::Index>(weights.size()))) {}

Measure Measure::uniform(std::size_t n) {
  return Measure(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n),
                                           1.0 / static_cast<double>(n)));
}

Measure Measure::mixture(const Measure& a, const Measure& b, double t) {
  if (a.size() != b.size())
    throw LabError(ErrorCode::kSpaceMismatch, "mixture of measures of different size");
  Eigen::VectorXd w = (1.0 - t) * a.weights() + t * b.weights();
  return Measure(std::move(w));
}

Density density(const Measure& numerator, const Measure& base) {
  if (numerator.size() != base.size())
    throw LabError(ErrorCode::kSpaceMismatch, "density of measures of different size");
  if (!base.is_equivalent())
    throw LabError(ErrorCode::kEquivalenceViolation, "base measure has a zero atom");
  return Density{numerator.weights().cwiseQuotient(base.weights())};
}

double tv_distance(const Measure& p, const Measure& q) {
  if (p.size() != q.size())
    throw LabError(ErrorCode::kSpaceMismatch, "total variation of measures of different size");
  return 0.5 * (p.weights() - q.weights()).cwiseAbs().sum();
}

double expectation(const Eigen::VectorXd& x, const Measure& p) {
  if (static_cast<std::size_t>(x.size()) != p.size())
    throw LabError(ErrorCode::kSpaceMismatch, "random variable and measure differ in size");
  return p.weights().dot(x);
}

double conditional_expectation(const Eigen::VectorXd& x, NodeId node,
                               const FiniteFilteredSpace& space,
                               const Measure& p) {
  if (static_cast<std::size_t>(x.size()) != space.num_outcomes() ||
      p.size() != space.num_outcomes())
    throw LabError(ErrorCode::kSpaceMismatch, "size does not match the space");
  if (node >= space.num_nodes())
    throw LabError(ErrorCode::kSpaceMismatch, "node outside the tree");
  double mass = 0.0, acc = 0.0;
  for (std::size_t o : space.outcomes_below(node)) {
    mass += p[o];
    acc += p[o] * x(static_cast<Eigen::Index>(o));
  }
  if (!(mass > 0.0))
    throw LabError(ErrorCode::kDegenerateConditioning,
                   "zero mass below node '" + space.label(node) + "'");
  return acc / mass;
}

}  // namespace weakinfo
