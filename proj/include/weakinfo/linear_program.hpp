#pragma once

#include <Eigen/Dense>

namespace weakinfo {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

// maximize c'x subject to A x = b, x >= 0. Dense two-phase simplex with
// Bland's rule; intended for the few-hundred-variable systems built on
// event trees.
LpResult solve_standard_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                           const Eigen::VectorXd& c);

}  // namespace weakinfo
