#pragma once

#include <Eigen/Dense>

#include <functional>

namespace weakinfo {

// Value, gradient and diagonal Hessian of a separable objective
// sum_i phi_i(s_i).
using SeparableEval =
    std::function<void(const Eigen::VectorXd& s, double& value,
                       Eigen::VectorXd& gradient, Eigen::VectorXd& hessian)>;

struct NewtonOptions {
  double barrier_start = 10.0;
  double barrier_end = 1e-10;
  double barrier_factor = 10.0;
  // Cap on Newton steps per barrier stage.
  int max_iterations = 200;
  // Skip the barrier continuation and polish directly; for warm starts.
  bool warm = false;
};

struct NewtonResult {
  Eigen::VectorXd s;
  int iterations = 0;
  bool converged = false;
  // |M' grad| / |grad| at the returned point, without barrier terms.
  double stationarity = 0.0;
};

// Minimizes sum_i phi_i(s_i) over s = s0 + M z with s > 0 by damped
// Newton on z, following a log-barrier path mu -> 0 and finishing with
// barrier-free steps. `s0` must be strictly positive.
NewtonResult minimize_on_affine_slice(const Eigen::VectorXd& s0,
                                      const Eigen::MatrixXd& m,
                                      const SeparableEval& eval,
                                      const NewtonOptions& options);

}  // namespace weakinfo
