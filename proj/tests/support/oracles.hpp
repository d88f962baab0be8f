#pragma once

// Independent reference computations used only by the tests. None of these
// call the library's solvers.

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Golden-section minimisation of a unimodal function on [a, b].
inline double golden_section(const std::function<double(double)>& f, double a, double b,
                             double tol = 1e-14) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol * (1.0 + std::abs(a) + std::abs(b))) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// One-period trinomial with S_0 = 1 and S_1 = s: martingale measures as a
// function of t = q_3.
inline Eigen::Vector3d trinomial_measure(const Eigen::Vector3d& s, double t) {
  // q1 (s1 - 1) + q2 (s2 - 1) = -t (s3 - 1), q1 + q2 = 1 - t.
  const double a = s(0) - 1.0, b = s(1) - 1.0;
  const double rhs = -t * (s(2) - 1.0);
  const double q1 = (rhs - b * (1.0 - t)) / (a - b);
  return {q1, 1.0 - t - q1, t};
}

// Range of t keeping all three weights nonnegative.
inline std::pair<double, double> trinomial_range(const Eigen::Vector3d& s) {
  double lo = 0.0, hi = 1.0;
  // q is affine in t; intersect the three half-lines.
  const Eigen::Vector3d q0 = trinomial_measure(s, 0.0);
  const Eigen::Vector3d slope = trinomial_measure(s, 1.0) - q0;
  for (int i = 0; i < 3; ++i) {
    if (slope(i) > 0) lo = std::max(lo, -q0(i) / slope(i));
    if (slope(i) < 0) hi = std::min(hi, -q0(i) / slope(i));
  }
  return {lo, hi};
}

// Conjugates written out directly.
inline double conj_log(double y) { return -std::log(y) - 1.0; }
inline double conj_power(double p, double y) {
  const double q = p / (1.0 - p);
  return std::pow(y, -q) / q;
}

// Minimiser of sum_i P_i V(y q_i / P_i) over the trinomial martingale family.
inline Eigen::Vector3d trinomial_dual(const Eigen::Vector3d& s, const Eigen::Vector3d& p,
                                      const std::function<double(double)>& v, double y) {
  auto obj = [&](double t) {
    const Eigen::Vector3d q = trinomial_measure(s, t);
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) acc += p(i) * v(y * q(i) / p(i));
    return acc;
  };
  auto [lo, hi] = trinomial_range(s);
  const double eps = 1e-15 * (hi - lo);
  return trinomial_measure(s, golden_section(obj, lo + eps, hi - eps));
}

// P^nu by direct Bayes arithmetic: P[w | Y = Y(w)] * nu(Y(w)).
inline Eigen::VectorXd bayes_minimal_measure(const Eigen::VectorXd& p,
                                             const std::vector<std::size_t>& labels,
                                             const Eigen::VectorXd& nu) {
  Eigen::VectorXd out(p.size());
  for (Eigen::Index w = 0; w < p.size(); ++w) {
    double mass = 0.0;
    for (Eigen::Index v = 0; v < p.size(); ++v)
      if (labels[static_cast<std::size_t>(v)] == labels[static_cast<std::size_t>(w)]) mass += p(v);
    out(w) = p(w) / mass * nu(static_cast<Eigen::Index>(labels[static_cast<std::size_t>(w)]));
  }
  return out;
}

// Central difference.
inline double derivative(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracle
