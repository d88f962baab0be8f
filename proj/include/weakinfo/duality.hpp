#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "weakinfo/market.hpp"
#include "weakinfo/newton.hpp"
#include "weakinfo/preferences.hpp"
#include "weakinfo/prob_space.hpp"

namespace weakinfo {

struct SolverDiagnostics {
  int iterations = 0;
  double stationarity = 0.0;  // relative KKT residual
  double feasibility = 0.0;   // max |A q - b|
};

struct DualSolution {
  double y = 0.0;
  Measure q_hat;
  Density z_hat;  // dQ/dP against the measure the problem was posed under
  double value = 0.0;
  bool boundary_flag = false;
  SolverDiagnostics diagnostics;
};

struct PrimalSolution {
  double x = 0.0;
  double y_star = 0.0;
  DualSolution dual;
  Eigen::VectorXd terminal_wealth;
  std::optional<Strategy> strategy;
  double value = 0.0;
  double budget_residual = 0.0;  // |E_Q[X_T] - x| / x
  int root_iterations = 0;
};

// Dual problem min_q sum_w P_w V(w, y q_w / P_w) over the martingale
// polytope, for one (model, utility, measure) triple. Keeps the polytope so
// repeated solves in y reuse it.
class DualProblem {
 public:
  DualProblem(const MarketModel& model, const UtilityField& u, const Measure& p,
              NewtonOptions options = {});
  // Objective posed under P with a density Z: sum P Z V(y q / (P Z)).
  DualProblem(const MarketModel& model, const UtilityField& u, const Measure& p,
              const Density& z, NewtonOptions options = {});

  // `start` must be a strictly positive point of the polytope; defaults to
  // its analytic center.
  DualSolution solve(double y, const Eigen::VectorXd* start = nullptr) const;

  // Q-expectation of I(y dQ/dP) at the dual optimum; equals -v'(y).
  double budget(const DualSolution& sol) const;

  const MartingalePolytope& polytope() const { return polytope_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  const UtilityField& utility() const { return utility_; }

 private:
  MartingalePolytope polytope_;
  UtilityField utility_;
  ConjugateField conj_;
  Eigen::VectorXd weights_;
  NewtonOptions options_;
};

DualSolution solve_dual(const MarketModel& model, const UtilityField& u,
                        const Measure& p, double y);

// Same problem under P with the density-composed objective; used to check
// that posing the dual under P^n and under P with dP^n/dP agree.
DualSolution solve_dual_composed(const MarketModel& model, const UtilityField& u,
                                 const Measure& p, const Density& z, double y);

// Optimal terminal wealth X = I(y* Z(y*)) with y* chosen so that the budget
// E_Q[X] equals x.
PrimalSolution solve_primal(const MarketModel& model, const UtilityField& u,
                            const Measure& p, double x);

// u(x) - min over y_grid and y* of (v(y) + x y).
double conjugacy_gap(const MarketModel& model, const UtilityField& u,
                     const Measure& p, double x, const std::vector<double>& y_grid);

// sup E_P[U(X_T + q f)] over self-financing X from x with X_T + q f >= 0;
// -infinity when that set has empty interior.
double primal_with_endowment(const MarketModel& model, const UtilityField& u,
                             const Measure& p, double x, double q, const Claim& f);

}  // namespace weakinfo
