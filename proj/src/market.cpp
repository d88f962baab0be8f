#include "weakinfo/market.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "weakinfo/error.hpp"
#include "weakinfo/linear_program.hpp"

namespace weakinfo {
namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

MarketModel::MarketModel(FiniteFilteredSpace space,
                         std::vector<Eigen::VectorXd> prices)
    : space_(std::move(space)), prices_(std::move(prices)) {
  for (std::size_t k = 0; k < prices_.size(); ++k) {
    if (static_cast<std::size_t>(prices_[k].size()) != space_.num_nodes())
      throw LabError(ErrorCode::kInvalidModel,
                     "asset " + std::to_string(k) + " must have one price per node");
    for (Eigen::Index n = 0; n < prices_[k].size(); ++n)
      if (!std::isfinite(prices_[k](n)) || !(prices_[k](n) > 0.0))
        throw LabError(ErrorCode::kInvalidModel,
                       "asset " + std::to_string(k) + " has a non-positive price at '" +
                           space_.label(static_cast<NodeId>(n)) + "'");
  }
}

Eigen::VectorXd MarketModel::terminal_prices(std::size_t asset) const {
  return terminal_values(prices_.at(asset), space_);
}

Eigen::MatrixXd MarketModel::gains_matrix() const {
  const auto& nodes = space_.decision_nodes();
  const std::size_t d = num_assets();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(idx(num_outcomes()), idx(nodes.size() * d));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    NodeId n = nodes[i];
    int t = space_.depth(n);
    for (std::size_t o : space_.outcomes_below(n)) {
      NodeId next = space_.node_on_path(o, t + 1);
      for (std::size_t k = 0; k < d; ++k)
        g(idx(o), idx(i * d + k)) = price(k, next) - price(k, n);
    }
  }
  return g;
}

Strategy Strategy::zero(const MarketModel& model) {
  return Strategy{std::vector<Eigen::VectorXd>(
      model.space().num_nodes(), Eigen::VectorXd::Zero(idx(model.num_assets())))};
}

Strategy Strategy::from_controls(const MarketModel& model,
                                 const Eigen::VectorXd& controls) {
  Strategy s = zero(model);
  const auto& nodes = model.space().decision_nodes();
  const Eigen::Index d = idx(model.num_assets());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    s.holdings[nodes[i]] = controls.segment(idx(i) * d, d);
  return s;
}

Eigen::VectorXd Strategy::controls(const MarketModel& model) const {
  const auto& nodes = model.space().decision_nodes();
  const Eigen::Index d = idx(model.num_assets());
  Eigen::VectorXd out(idx(nodes.size()) * d);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    out.segment(idx(i) * d, d) = holdings.at(nodes[i]);
  return out;
}

Eigen::VectorXd wealth_process(double x, const Strategy& strategy,
                               const MarketModel& model) {
  const auto& space = model.space();
  if (strategy.holdings.size() != space.num_nodes())
    throw LabError(ErrorCode::kSpaceMismatch, "strategy does not match the tree");
  Eigen::VectorXd w(idx(space.num_nodes()));
  w(0) = x;
  // Nodes are stored breadth-first, so a parent is always filled first.
  for (NodeId c = 1; c < space.num_nodes(); ++c) {
    NodeId p = space.parent(c);
    const Eigen::VectorXd& h = strategy.holdings[p];
    double gain = 0.0;
    for (std::size_t k = 0; k < model.num_assets(); ++k)
      gain += h(idx(k)) * (model.price(k, c) - model.price(k, p));
    w(idx(c)) = w(idx(p)) + gain;
  }
  return w;
}

Eigen::VectorXd terminal_values(const Eigen::VectorXd& node_values,
                                const FiniteFilteredSpace& space) {
  Eigen::VectorXd out(idx(space.num_outcomes()));
  for (std::size_t o = 0; o < space.num_outcomes(); ++o)
    out(idx(o)) = node_values(idx(space.outcome_node(o)));
  return out;
}

std::optional<Replication> is_replicable(const Claim& f, const MarketModel& model) {
  const auto& space = model.space();
  if (static_cast<std::size_t>(f.size()) != space.num_outcomes())
    throw LabError(ErrorCode::kSpaceMismatch, "claim does not match the outcomes");
  const std::size_t d = model.num_assets();
  Eigen::VectorXd value = Eigen::VectorXd::Zero(idx(space.num_nodes()));
  for (std::size_t o = 0; o < space.num_outcomes(); ++o)
    value(idx(space.outcome_node(o))) = f(idx(o));

  Replication rep{0.0, Strategy::zero(model), 0.0};
  const auto& nodes = space.decision_nodes();
  for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
    NodeId n = *it;
    auto kids = space.children(n);
    Eigen::MatrixXd m(idx(kids.size()), idx(d + 1));
    Eigen::VectorXd rhs(idx(kids.size()));
    for (std::size_t j = 0; j < kids.size(); ++j) {
      m(idx(j), 0) = 1.0;
      for (std::size_t k = 0; k < d; ++k)
        m(idx(j), idx(k + 1)) = model.price(k, kids[j]) - model.price(k, n);
      rhs(idx(j)) = value(idx(kids[j]));
    }
    Eigen::VectorXd sol = m.completeOrthogonalDecomposition().solve(rhs);
    rep.residual = std::max(rep.residual, (m * sol - rhs).cwiseAbs().maxCoeff());
    value(idx(n)) = sol(0);
    rep.strategy.holdings[n] = sol.tail(idx(d));
  }
  const double threshold = 1e-9 * (1.0 + f.cwiseAbs().maxCoeff());
  if (!(rep.residual < threshold)) return std::nullopt;
  rep.cost = value(0);
  return rep;
}

namespace {

MartingaleConstraints build_constraints(const MarketModel& model) {
  const auto& space = model.space();
  const auto& nodes = space.decision_nodes();
  const std::size_t d = model.num_assets();
  const std::size_t rows = nodes.size() * d + 1;
  MartingaleConstraints c{Eigen::MatrixXd::Zero(idx(rows), idx(space.num_outcomes())),
                          Eigen::VectorXd::Zero(idx(rows))};
  Eigen::MatrixXd g = model.gains_matrix();
  c.a.topRows(g.cols()) = g.transpose();
  c.a.row(idx(rows - 1)).setOnes();
  c.b(idx(rows - 1)) = 1.0;
  return c;
}

// Strictly positive feasible point: maximize t with q = s + t * 1, s >= 0.
Eigen::VectorXd strictly_positive_point(const MartingaleConstraints& c) {
  const Eigen::Index n = c.a.cols();
  Eigen::MatrixXd a(c.a.rows(), n + 1);
  a.leftCols(n) = c.a;
  a.col(n) = c.a.rowwise().sum();
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(n + 1);
  cost(n) = 1.0;
  LpResult lp = solve_standard_lp(a, c.b, cost);
  if (lp.status == LpStatus::kInfeasible)
    throw LabError(ErrorCode::kNoArbitrageViolation, "no martingale measure exists");
  if (lp.status != LpStatus::kOptimal)
    throw LabError(ErrorCode::kSolverFailure, "martingale feasibility program is unbounded");
  const double t = lp.x(n);
  if (!(t > 1e-12))
    throw LabError(ErrorCode::kNoArbitrageViolation,
                   "no strictly positive martingale measure exists");
  return lp.x.head(n).array() + t;
}

}  // namespace

MartingaleConstraints martingale_measure_constraints(const MarketModel& model) {
  MartingaleConstraints c = build_constraints(model);
  strictly_positive_point(c);
  return c;
}

MartingalePolytope::MartingalePolytope(const MarketModel& model)
    : constraints_(build_constraints(model)) {
  Eigen::VectorXd q = strictly_positive_point(constraints_);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraints_.a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double tol = 1e-10 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  rank_ = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank_;
  const Eigen::Index n = constraints_.a.cols();
  kernel_ = svd.matrixV().rightCols(n - rank_);

  // Damped Newton toward the analytic center, maximizing sum log q.
  for (int iter = 0; iter < 100 && kernel_.cols() > 0; ++iter) {
    Eigen::VectorXd g = -kernel_.transpose() * q.cwiseInverse();
    Eigen::MatrixXd h =
        kernel_.transpose() * q.array().square().inverse().matrix().asDiagonal() * kernel_;
    Eigen::VectorXd dz = -h.llt().solve(g);
    double decrement = -g.dot(dz);
    if (decrement < 1e-20) break;
    Eigen::VectorXd dq = kernel_ * dz;
    double step = 1.0;
    for (Eigen::Index i = 0; i < n; ++i)
      if (dq(i) < 0.0) step = std::min(step, -0.9 * q(i) / dq(i));
    if (decrement > 0.25) step = std::min(step, 1.0 / (1.0 + std::sqrt(decrement)));
    q += step * dq;
  }
  center_ = q;
}

double MartingalePolytope::residual(const Eigen::VectorXd& q) const {
  return (constraints_.a * q - constraints_.b).cwiseAbs().maxCoeff();
}

std::vector<Eigen::VectorXd> MartingalePolytope::vertices() const {
  const Eigen::Index n = constraints_.a.cols();
  if (n > 20)
    throw LabError(ErrorCode::kDomainError, "vertex enumeration limited to 20 outcomes");
  std::vector<Eigen::VectorXd> out;
  std::vector<int> pick(static_cast<std::size_t>(n), 0);
  std::fill(pick.end() - rank_, pick.end(), 1);
  do {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index j = 0; j < n; ++j)
      if (pick[static_cast<std::size_t>(j)]) cols.push_back(j);
    Eigen::MatrixXd sub(constraints_.a.rows(), idx(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) sub.col(idx(j)) = constraints_.a.col(cols[j]);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
    qr.setThreshold(1e-10);
    if (qr.rank() != static_cast<Eigen::Index>(cols.size())) continue;
    Eigen::VectorXd sol = qr.solve(constraints_.b);
    if ((sub * sol - constraints_.b).cwiseAbs().maxCoeff() > 1e-10) continue;
    if (sol.minCoeff() < -1e-12) continue;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (std::size_t j = 0; j < cols.size(); ++j) v(cols[j]) = std::max(0.0, sol(idx(j)));
    bool dup = false;
    for (const auto& w : out)
      if ((w - v).cwiseAbs().maxCoeff() < 1e-10) dup = true;
    if (!dup) out.push_back(v);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

bool is_complete(const MarketModel& model) {
  return MartingalePolytope(model).dimension() == 0;
}

std::pair<MarketModel, Claim> change_numeraire(const MarketModel& model,
                                               std::size_t asset,
                                               const Claim& f) {
  if (static_cast<std::size_t>(f.size()) != model.num_outcomes())
    throw LabError(ErrorCode::kSpaceMismatch, "claim does not match the outcomes");
  if (asset == kRiskless) return {model, f};
  if (asset >= model.num_assets())
    throw LabError(ErrorCode::kInvalidNumeraire, "numeraire index out of range");
  const Eigen::VectorXd& num = model.prices(asset);
  if (!(num.array() > 0.0).all() || !num.allFinite())
    throw LabError(ErrorCode::kInvalidNumeraire, "numeraire must be strictly positive");
  std::vector<Eigen::VectorXd> prices;
  for (std::size_t k = 0; k < model.num_assets(); ++k)
    prices.push_back(k == asset ? num.cwiseInverse().eval()
                                : model.prices(k).cwiseQuotient(num).eval());
  Claim g = f.cwiseQuotient(model.terminal_prices(asset));
  return {MarketModel(model.space(), std::move(prices)), std::move(g)};
}

}  // namespace weakinfo
