#include "weakinfo/linear_program.hpp"

#include <cmath>
#include <vector>

namespace weakinfo {
namespace {

constexpr double kPivotTol = 1e-11;

struct Tableau {
  // Rows 0..m-1 are constraints, row m is the reduced-cost row. The last
  // column holds the right-hand side.
  Eigen::MatrixXd t;
  std::vector<Eigen::Index> basis;

  Eigen::Index rows() const { return t.rows() - 1; }
  Eigen::Index rhs() const { return t.cols() - 1; }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t.row(r) /= t(r, c);
    for (Eigen::Index i = 0; i < t.rows(); ++i)
      if (i != r && t(i, c) != 0.0) t.row(i) -= t(i, c) * t.row(r);
    basis[static_cast<std::size_t>(r)] = c;
  }

  // Minimizes the objective whose reduced costs sit in the last row, over
  // columns [0, ncols). Returns false when unbounded.
  bool run(Eigen::Index ncols) {
    for (int iter = 0; iter < 100000; ++iter) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < ncols; ++j)
        if (t(rows(), j) < -kPivotTol) {
          enter = j;  // Bland: lowest index
          break;
        }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      double best = 0.0;
      for (Eigen::Index i = 0; i < rows(); ++i) {
        if (t(i, enter) > kPivotTol) {
          double ratio = t(i, rhs()) / t(i, enter);
          if (leave < 0 || ratio < best - 1e-15 ||
              (std::abs(ratio - best) <= 1e-15 &&
               basis[static_cast<std::size_t>(i)] <
                   basis[static_cast<std::size_t>(leave)])) {
            leave = i;
            best = ratio;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    return true;
  }
};

}  // namespace

LpResult solve_standard_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                           const Eigen::VectorXd& c) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  LpResult result;

  // Phase I: minimize the sum of artificials.
  Tableau tab;
  tab.t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  tab.basis.resize(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    double sign = b(i) < 0.0 ? -1.0 : 1.0;
    tab.t.row(i).head(n) = sign * a.row(i);
    tab.t(i, n + i) = 1.0;
    tab.t(i, n + m) = sign * b(i);
    tab.basis[static_cast<std::size_t>(i)] = n + i;
  }
  for (Eigen::Index i = 0; i < m; ++i) tab.t.row(m) -= tab.t.row(i);
  for (Eigen::Index i = 0; i < m; ++i) tab.t(m, n + i) = 0.0;
  tab.run(n + m);
  const double scale = 1.0 + b.cwiseAbs().maxCoeff();
  if (-tab.t(m, n + m) > 1e-9 * scale) return result;  // infeasible

  // Drive remaining artificials out of the basis; drop redundant rows.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] >= n) {
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < n; ++j)
        if (std::abs(tab.t(i, j)) > 1e-9) {
          col = j;
          break;
        }
      if (col < 0) continue;
      tab.pivot(i, col);
    }
    keep.push_back(i);
  }

  // Phase II on the original columns.
  Tableau ph2;
  const Eigen::Index mk = static_cast<Eigen::Index>(keep.size());
  ph2.t = Eigen::MatrixXd::Zero(mk + 1, n + 1);
  for (Eigen::Index k = 0; k < mk; ++k) {
    Eigen::Index i = keep[static_cast<std::size_t>(k)];
    ph2.t.row(k).head(n) = tab.t.row(i).head(n);
    ph2.t(k, n) = tab.t(i, n + m);
    ph2.basis.push_back(tab.basis[static_cast<std::size_t>(i)]);
  }
  ph2.t.row(mk).head(n) = -c.transpose();
  for (Eigen::Index k = 0; k < mk; ++k) {
    Eigen::Index j = ph2.basis[static_cast<std::size_t>(k)];
    if (ph2.t(mk, j) != 0.0) ph2.t.row(mk) -= ph2.t(mk, j) * ph2.t.row(k);
  }
  if (!ph2.run(n)) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < mk; ++k)
    result.x(ph2.basis[static_cast<std::size_t>(k)]) = std::max(0.0, ph2.t(k, n));
  result.objective = c.dot(result.x);
  return result;
}

}  // namespace weakinfo
