#include "weakinfo/duality.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <limits>

#include "weakinfo/error.hpp"
#include "weakinfo/linear_program.hpp"

namespace weakinfo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

void require_equivalent(const Measure& p, std::size_t outcomes) {
  if (p.size() != outcomes)
    throw LabError(ErrorCode::kSpaceMismatch, "measure does not match the outcomes");
  if (!p.is_equivalent())
    throw LabError(ErrorCode::kEquivalenceViolation, "measure must charge every outcome");
}

void require_field(const UtilityField& u, std::size_t outcomes) {
  if (u.size() != outcomes)
    throw LabError(ErrorCode::kSpaceMismatch, "utility field does not match the outcomes");
}

// Sum of p_i v_i with the -inf / +inf conventions: zero weights drop out.
double weighted_sum(const Eigen::VectorXd& p, const Eigen::VectorXd& v) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) > 0.0) acc += p(i) * v(i);
  return acc;
}

}  // namespace

DualProblem::DualProblem(const MarketModel& model, const UtilityField& u,
                         const Measure& p, NewtonOptions options)
    : polytope_(model), utility_(u), conj_(conjugate(u)), weights_(p.weights()),
      options_(options) {
  require_equivalent(p, model.num_outcomes());
  require_field(u, model.num_outcomes());
}

DualProblem::DualProblem(const MarketModel& model, const UtilityField& u,
                         const Measure& p, const Density& z, NewtonOptions options)
    : polytope_(model), utility_(u), conj_(conjugate(u)),
      weights_(p.weights().cwiseProduct(z.values)), options_(options) {
  require_equivalent(p, model.num_outcomes());
  require_field(u, model.num_outcomes());
  if (z.values.size() != p.weights().size() || !(z.values.array() > 0.0).all())
    throw LabError(ErrorCode::kEquivalenceViolation, "density must be strictly positive");
}

DualSolution DualProblem::solve(double y, const Eigen::VectorXd* start) const {
  if (!(y > 0.0) || !std::isfinite(y))
    throw LabError(ErrorCode::kDomainError, "dual variable y must be positive");
  const Eigen::VectorXd& w = weights_;
  SeparableEval eval = [&](const Eigen::VectorXd& q, double& f, Eigen::VectorXd& g,
                           Eigen::VectorXd& h) {
    const Eigen::Index n = q.size();
    g.resize(n);
    h.resize(n);
    f = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const std::size_t o = static_cast<std::size_t>(i);
      const double arg = y * q(i) / w(i);
      f += w(i) * conj_.value(o, arg);
      g(i) = y * conj_.derivative(o, arg);
      h(i) = y * y / w(i) * conj_.second_derivative(o, arg);
    }
  };
  NewtonOptions opts = options_;
  Eigen::VectorXd q0 = polytope_.interior_point();
  if (start != nullptr) {
    q0 = *start;
    opts.warm = true;
  }
  NewtonResult r = minimize_on_affine_slice(q0, polytope_.kernel(), eval, opts);
  if (!r.converged && opts.warm) {
    opts.warm = false;
    r = minimize_on_affine_slice(polytope_.interior_point(), polytope_.kernel(), eval, opts);
  }
  if (!r.converged)
    throw LabError(ErrorCode::kSolverFailure,
                   "dual Newton did not converge after " + std::to_string(r.iterations) +
                       " iterations (stationarity " + std::to_string(r.stationarity) + ")");

  Eigen::VectorXd q = r.s;
  // Remove rounding drift off the simplex before building the measure.
  q /= q.sum();
  DualSolution sol{.y = y, .q_hat = Measure(q), .z_hat = Density{q.cwiseQuotient(w)}, .value = 0.0, .boundary_flag = false, .diagnostics = {}};
  Eigen::VectorXd vals(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i)
    vals(i) = conj_.value(static_cast<std::size_t>(i), y * sol.z_hat.values(i));
  sol.value = weighted_sum(w, vals);
  sol.boundary_flag = q.minCoeff() < 1e-12;
  sol.diagnostics = {r.iterations, r.stationarity, polytope_.residual(q)};
  return sol;
}

double DualProblem::budget(const DualSolution& sol) const {
  const Eigen::VectorXd& q = sol.q_hat.weights();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < q.size(); ++i)
    acc += q(i) * inverse_marginal(utility_, static_cast<std::size_t>(i),
                                   sol.y * sol.z_hat.values(i));
  return acc;
}

DualSolution solve_dual(const MarketModel& model, const UtilityField& u,
                        const Measure& p, double y) {
  return DualProblem(model, u, p).solve(y);
}

DualSolution solve_dual_composed(const MarketModel& model, const UtilityField& u,
                                 const Measure& p, const Density& z, double y) {
  return DualProblem(model, u, p, z).solve(y);
}

PrimalSolution solve_primal(const MarketModel& model, const UtilityField& u,
                            const Measure& p, double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw LabError(ErrorCode::kDomainError, "initial wealth must be positive");
  DualProblem dual(model, u, p);

  // The budget y -> E_Q(y)[I(y Z(y))] is strictly decreasing; bracket the
  // root in log y, then refine with TOMS 748.
  Eigen::VectorXd warm = dual.polytope().interior_point();
  int evaluations = 0;
  auto excess = [&](double log_y) {
    DualSolution s = dual.solve(std::exp(log_y), &warm);
    warm = s.q_hat.weights();
    ++evaluations;
    return dual.budget(s) - x;
  };
  const double limit = 64.0 * std::log(2.0);
  double lo = std::log(1e-8), hi = std::log(1e8);
  double f_lo = excess(lo), f_hi = excess(hi);
  while (f_lo < 0.0) {
    if (lo <= -limit)
      throw LabError(ErrorCode::kSolverFailure, "budget bracket exhausted below");
    hi = lo;
    f_hi = f_lo;
    lo = std::max(-limit, lo - std::log(100.0));
    f_lo = excess(lo);
  }
  while (f_hi > 0.0) {
    if (hi >= limit)
      throw LabError(ErrorCode::kSolverFailure, "budget bracket exhausted above");
    lo = hi;
    f_lo = f_hi;
    hi = std::min(limit, hi + std::log(100.0));
    f_hi = excess(hi);
  }
  double log_y = lo;
  if (f_lo == 0.0) {
    log_y = lo;
  } else if (f_hi == 0.0) {
    log_y = hi;
  } else {
    std::uintmax_t max_iter = 200;
    auto tol = [](double a, double b) { return std::abs(a - b) <= 1e-13; };
    auto [a, b] = boost::math::tools::toms748_solve(excess, lo, hi, f_lo, f_hi, tol, max_iter);
    log_y = 0.5 * (a + b);
  }

  const double y_star = std::exp(log_y);
  PrimalSolution out{.x = x, .y_star = y_star, .dual = dual.solve(y_star, &warm), .terminal_wealth = {}, .strategy = std::nullopt};
  const Eigen::Index n = static_cast<Eigen::Index>(model.num_outcomes());
  out.terminal_wealth.resize(n);
  Eigen::VectorXd utils(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t o = static_cast<std::size_t>(i);
    out.terminal_wealth(i) = inverse_marginal(u, o, out.y_star * out.dual.z_hat.values(i));
    utils(i) = u.value(o, out.terminal_wealth(i));
  }
  out.value = weighted_sum(p.weights(), utils);
  out.budget_residual =
      std::abs(out.dual.q_hat.weights().dot(out.terminal_wealth) - x) / x;
  out.root_iterations = evaluations;
  if (auto rep = is_replicable(out.terminal_wealth, model)) out.strategy = rep->strategy;
  return out;
}

double conjugacy_gap(const MarketModel& model, const UtilityField& u,
                     const Measure& p, double x, const std::vector<double>& y_grid) {
  PrimalSolution primal = solve_primal(model, u, p, x);
  DualProblem dual(model, u, p);
  double best = primal.dual.value + x * primal.y_star;
  for (double y : y_grid) best = std::min(best, dual.solve(y).value + x * y);
  return primal.value - best;
}

double primal_with_endowment(const MarketModel& model, const UtilityField& u,
                             const Measure& p, double x, double q, const Claim& f) {
  const std::size_t n = model.num_outcomes();
  require_equivalent(p, n);
  require_field(u, n);
  if (static_cast<std::size_t>(f.size()) != n)
    throw LabError(ErrorCode::kSpaceMismatch, "claim does not match the outcomes");

  const Eigen::VectorXd c = Eigen::VectorXd::Constant(idx(n), x) + q * f;

  // Independent trading directions only, so the Hessian stays definite.
  Eigen::MatrixXd g_full = model.gains_matrix();
  Eigen::MatrixXd g(idx(n), 0);
  if (g_full.cols() > 0) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(g_full);
    qr.setThreshold(1e-12);
    const Eigen::Index r = qr.rank();
    g.resize(idx(n), r);
    for (Eigen::Index j = 0; j < r; ++j) g.col(j) = g_full.col(qr.colsPermutation().indices()(j));
  }
  const Eigen::Index m = g.cols();

  // Maximize the smallest terminal wealth to find an interior start:
  // c + G (a - b) - t+ + t- - s = 0.
  Eigen::VectorXd w0 = c;
  const double scale = 1.0 + c.cwiseAbs().maxCoeff();
  if (m > 0) {
    const Eigen::Index cols = 2 * m + 2 + idx(n);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(idx(n), cols);
    a.leftCols(m) = g;
    a.middleCols(m, m) = -g;
    a.col(2 * m) = -Eigen::VectorXd::Ones(idx(n));
    a.col(2 * m + 1) = Eigen::VectorXd::Ones(idx(n));
    a.rightCols(idx(n)) = -Eigen::MatrixXd::Identity(idx(n), idx(n));
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols);
    cost(2 * m) = 1.0;
    cost(2 * m + 1) = -1.0;
    LpResult lp = solve_standard_lp(a, -c, cost);
    if (lp.status == LpStatus::kUnbounded)
      throw LabError(ErrorCode::kNoArbitrageViolation, "terminal wealth can be made arbitrarily large");
    if (lp.status != LpStatus::kOptimal)
      throw LabError(ErrorCode::kSolverFailure, "interior start program failed");
    w0 = c + g * (lp.x.head(m) - lp.x.segment(m, m));
  }
  if (!(w0.minCoeff() > 1e-12 * scale)) return -kInf;

  const Eigen::VectorXd& pw = p.weights();
  SeparableEval eval = [&](const Eigen::VectorXd& w, double& f_val, Eigen::VectorXd& grad,
                           Eigen::VectorXd& hess) {
    const Eigen::Index k = w.size();
    grad.resize(k);
    hess.resize(k);
    f_val = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      const std::size_t o = static_cast<std::size_t>(i);
      f_val -= pw(i) * u.value(o, w(i));
      grad(i) = -pw(i) * u.marginal(o, w(i));
      hess(i) = -pw(i) * u.curvature(o, w(i));
    }
  };
  NewtonResult r = minimize_on_affine_slice(w0, g, eval, NewtonOptions{});
  if (!r.converged)
    throw LabError(ErrorCode::kSolverFailure,
                   "endowment Newton did not converge after " + std::to_string(r.iterations) +
                       " iterations");
  Eigen::VectorXd utils(r.s.size());
  for (Eigen::Index i = 0; i < r.s.size(); ++i)
    utils(i) = u.value(static_cast<std::size_t>(i), r.s(i));
  return weighted_sum(pw, utils);
}

}  // namespace weakinfo
