#include "weakinfo/newton.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace weakinfo {
namespace {

double barrier_value(const Eigen::VectorXd& s, double mu) {
  return mu > 0.0 ? -mu * s.array().log().sum() : 0.0;
}

}  // namespace

NewtonResult minimize_on_affine_slice(const Eigen::VectorXd& s0,
                                      const Eigen::MatrixXd& m,
                                      const SeparableEval& eval,
                                      const NewtonOptions& options) {
  NewtonResult out;
  out.s = s0;
  Eigen::VectorXd g, h;
  double f = 0.0;
  if (m.cols() == 0) {
    eval(out.s, f, g, h);
    out.converged = true;
    return out;
  }

  std::vector<double> stages;
  if (!options.warm)
    for (double mu = options.barrier_start; mu >= options.barrier_end * 0.999;
         mu /= options.barrier_factor)
      stages.push_back(mu);
  stages.push_back(0.0);

  Eigen::VectorXd& s = out.s;
  for (std::size_t stage = 0; stage < stages.size(); ++stage) {
    const double mu = stages[stage];
    const bool last = stage + 1 == stages.size();
    const double step_tol = last ? 1e-15 : 1e-9;
    bool done = false;
    for (int it = 0; it < options.max_iterations; ++it) {
      ++out.iterations;
      eval(s, f, g, h);
      if (mu > 0.0) {
        f += barrier_value(s, mu);
        g -= mu * s.cwiseInverse();
        h += mu * s.array().square().inverse().matrix();
      }
      const Eigen::VectorXd gz = m.transpose() * g;
      const Eigen::MatrixXd hz = m.transpose() * h.asDiagonal() * m;
      Eigen::LDLT<Eigen::MatrixXd> ldlt(hz);
      Eigen::VectorXd dz = -ldlt.solve(gz);
      if (!dz.allFinite()) break;
      const Eigen::VectorXd ds = m * dz;
      const double scale = 1.0 + s.cwiseAbs().maxCoeff();
      const double ds_norm = ds.cwiseAbs().maxCoeff();

      double alpha = 1.0;
      for (Eigen::Index i = 0; i < s.size(); ++i)
        if (ds(i) < 0.0) alpha = std::min(alpha, -0.95 * s(i) / ds(i));

      if (ds_norm <= 1e-10 * scale && alpha == 1.0) {
        // Inside the quadratic region the line search only sees rounding.
        s += ds;
        if (ds_norm <= step_tol * scale) {
          done = true;
          break;
        }
        continue;
      }
      const double slope = gz.dot(dz);
      bool accepted = false;
      while (alpha > 1e-18) {
        Eigen::VectorXd trial = s + alpha * ds;
        if ((trial.array() > 0.0).all()) {
          double ft = 0.0;
          Eigen::VectorXd gt, ht;
          eval(trial, ft, gt, ht);
          ft += barrier_value(trial, mu);
          if (std::isfinite(ft) && ft <= f + 1e-4 * alpha * slope) {
            s = trial;
            accepted = true;
            break;
          }
        }
        alpha *= 0.5;
      }
      if (!accepted) {
        // No representable decrease: we are at the optimum to rounding.
        done = ds_norm <= 1e-7 * scale;
        break;
      }
      if (ds_norm * alpha <= step_tol * scale) {
        done = true;
        break;
      }
    }
    if (!done && last) return out;
  }
  eval(s, f, g, h);
  const double gnorm = g.cwiseAbs().maxCoeff();
  const double mnorm = m.cwiseAbs().colwise().sum().maxCoeff();
  out.stationarity = gnorm > 0.0 && mnorm > 0.0
                         ? (m.transpose() * g).cwiseAbs().maxCoeff() / (gnorm * mnorm)
                         : 0.0;
  out.converged = true;
  return out;
}

}  // namespace weakinfo
