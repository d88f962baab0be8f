#include "weakinfo/stability_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "weakinfo/catalog.hpp"
#include "weakinfo/duality.hpp"
#include "weakinfo/error.hpp"
#include "weakinfo/pricing.hpp"

namespace weakinfo {
namespace {

// Gaps below this are treated as exact zeros in the monotonicity test.
constexpr double kGapNoiseFloor = 1e-12;

double active_gap(const ConvergenceRow& row, const std::vector<GapColumn>& cols) {
  double g = 0.0;
  for (GapColumn c : cols) g = std::max(g, row.gap(c));
  return g;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_sequence(const MeasureSequence& seq) {
  if (seq.n.size() != seq.measures.size())
    throw LabError(ErrorCode::kValidation, "sequence indices and measures differ in length");
  for (const auto& m : seq.measures) {
    if (!m.is_equivalent())
      throw LabError(ErrorCode::kEquivalenceViolation, "perturbed measure has a zero atom");
    if (m.size() != seq.limit.size())
      throw LabError(ErrorCode::kSpaceMismatch, "perturbed measure has the wrong size");
  }
}

// log of the integral over [-m, m] of exp(log_f), composite Simpson.
double log_simpson(double m, std::size_t panels, const auto& log_f) {
  if (panels % 2 == 1) ++panels;
  const double h = 2.0 * m / static_cast<double>(panels);
  std::vector<double> terms(panels + 1);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= panels; ++i) {
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    terms[i] = std::log(w * h / 3.0) + log_f(-m + h * static_cast<double>(i));
    top = std::max(top, terms[i]);
  }
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - top);
  return top + std::log(acc);
}

double log_normal_density(double w) {
  return -0.5 * w * w - 0.5 * std::log(2.0 * std::numbers::pi);
}

}  // namespace

double ConvergenceRow::gap(GapColumn c) const {
  switch (c) {
    case GapColumn::kValue: return u_gap;
    case GapColumn::kDual: return v_gap;
    case GapColumn::kPrimalOptimizer: return x_opt_gap;
    case GapColumn::kDualOptimizer: return y_opt_gap;
    case GapColumn::kPrice: return price_gap;
  }
  return 0.0;
}

std::vector<std::size_t> log_spaced_indices(std::size_t n_min, std::size_t n_max,
                                            std::size_t count) {
  if (n_min == 0 || n_max < n_min || count < 2)
    throw LabError(ErrorCode::kValidation, "invalid index range");
  std::set<std::size_t> out;
  const double a = std::log(static_cast<double>(n_min));
  const double b = std::log(static_cast<double>(n_max));
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    out.insert(static_cast<std::size_t>(std::llround(std::exp(a + t * (b - a)))));
  }
  out.insert(n_min);
  out.insert(n_max);
  return {out.begin(), out.end()};
}

MeasureSequence mixture_sequence(const Measure& limit, const Measure& start,
                                 const std::vector<std::size_t>& n) {
  MeasureSequence seq{.n = n, .measures = {}, .limit = limit};
  for (std::size_t k : n) {
    if (k == 0) throw LabError(ErrorCode::kValidation, "sequence index starts at 1");
    seq.measures.push_back(Measure::mixture(limit, start, 1.0 / static_cast<double>(k)));
  }
  return seq;
}

std::string ConvergenceReport::to_csv() const {
  std::ostringstream os;
  os << "n,tv,u_gap,v_gap,x_opt_gap,y_opt_gap,price_gap\n";
  for (const auto& r : rows)
    os << r.n << ',' << fmt17(r.tv) << ',' << fmt17(r.u_gap) << ',' << fmt17(r.v_gap) << ','
       << fmt17(r.x_opt_gap) << ',' << fmt17(r.y_opt_gap) << ',' << fmt17(r.price_gap) << '\n';
  return os.str();
}

void summarize(ConvergenceReport& report) {
  const auto& rows = report.rows;
  const std::size_t k = rows.size();
  report.verdict = k >= 3;
  for (std::size_t i = k >= 3 ? k - 3 : 0; i < k; ++i)
    if (!rows[i].error.empty() || !(active_gap(rows[i], report.columns) < report.tolerance))
      report.verdict = false;

  report.monotone_tail = k >= 2;
  for (std::size_t i = k >= 5 ? k - 4 : 1; i < k; ++i) {
    if (!rows[i].error.empty() || !rows[i - 1].error.empty()) {
      report.monotone_tail = false;
      continue;
    }
    const double prev = active_gap(rows[i - 1], report.columns);
    const double cur = active_gap(rows[i], report.columns);
    if (cur > prev && cur > kGapNoiseFloor) report.monotone_tail = false;
  }

  report.slope = 0.0;
  report.gap_constant = 0.0;
  if (report.columns.empty()) return;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& r : rows) {
    if (!r.error.empty()) continue;
    const double g = r.gap(report.columns.front());
    if (r.tv > 0.0) report.gap_constant = std::max(report.gap_constant, g / r.tv);
    if (!(g > kGapNoiseFloor)) continue;
    const double lx = std::log(static_cast<double>(r.n)), ly = std::log(g);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m >= 2 && m * sxx - sx * sx > 0.0) report.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

ConvergenceReport run_value_convergence(const MarketModel& model, const UtilityField& u,
                                        const MeasureSequence& seq, double x, double y,
                                        double tolerance) {
  check_sequence(seq);
  ConvergenceReport rep{.experiment = "value",
                        .columns = {GapColumn::kValue, GapColumn::kDual},
                        .rows = {},
                        .tolerance = tolerance};
  const double u_lim = solve_primal(model, u, seq.limit, x).value;
  const double v_lim = solve_dual(model, u, seq.limit, y).value;
  for (std::size_t i = 0; i < seq.n.size(); ++i) {
    ConvergenceRow row;
    row.n = seq.n[i];
    row.tv = tv_distance(seq.measures[i], seq.limit);
    try {
      row.u_gap = std::abs(solve_primal(model, u, seq.measures[i], x).value - u_lim);
      row.v_gap = std::abs(solve_dual(model, u, seq.measures[i], y).value - v_lim);
    } catch (const LabError& e) {
      row.error = e.what();
    }
    rep.rows.push_back(std::move(row));
  }
  summarize(rep);
  return rep;
}

ConvergenceReport run_optimizer_convergence(const MarketModel& model, const UtilityField& u,
                                            const MeasureSequence& seq,
                                            const std::vector<double>& x_n, double x_limit,
                                            double tolerance) {
  check_sequence(seq);
  if (x_n.size() != seq.n.size())
    throw LabError(ErrorCode::kValidation, "wealth sequence length differs from the measures");
  ConvergenceReport rep{.experiment = "optimizer",
                        .columns = {GapColumn::kPrimalOptimizer, GapColumn::kDualOptimizer},
                        .rows = {},
                        .tolerance = tolerance};
  const PrimalSolution lim = solve_primal(model, u, seq.limit, x_limit);
  const Eigen::VectorXd y_lim = lim.y_star * lim.dual.z_hat.values;
  for (std::size_t i = 0; i < seq.n.size(); ++i) {
    ConvergenceRow row;
    row.n = seq.n[i];
    row.tv = tv_distance(seq.measures[i], seq.limit);
    try {
      const PrimalSolution s = solve_primal(model, u, seq.measures[i], x_n[i]);
      row.x_opt_gap = (s.terminal_wealth - lim.terminal_wealth).cwiseAbs().maxCoeff();
      row.y_opt_gap = (s.y_star * s.dual.z_hat.values - y_lim).cwiseAbs().maxCoeff();
    } catch (const LabError& e) {
      row.error = e.what();
    }
    rep.rows.push_back(std::move(row));
  }
  summarize(rep);
  return rep;
}

ConvergenceReport run_price_convergence(const MarketModel& model,
                                        const std::vector<UtilityField>& u_n,
                                        const UtilityField& u_limit, const MeasureSequence& seq,
                                        const std::vector<double>& x_n, double x_limit,
                                        const Claim& f, double tolerance, bool definitional) {
  check_sequence(seq);
  if (x_n.size() != seq.n.size() || u_n.size() != seq.n.size())
    throw LabError(ErrorCode::kValidation, "scenario sequences differ in length");
  ConvergenceReport rep{.experiment = "price",
                        .columns = {GapColumn::kPrice},
                        .rows = {},
                        .tolerance = tolerance};
  const double p_lim = representation_price(model, u_limit, seq.limit, x_limit, f).price;
  for (std::size_t i = 0; i < seq.n.size(); ++i) {
    ConvergenceRow row;
    row.n = seq.n[i];
    row.tv = tv_distance(seq.measures[i], seq.limit);
    try {
      if (definitional) {
        const PriceReport r = indifference_price(model, u_n[i], seq.measures[i], x_n[i], f);
        row.price_gap = std::abs(r.price - p_lim);
        row.definitional_slack = r.definitional_check;
        if (r.definitional_check > kDefinitionalTolerance)
          row.error = "definitional check failed";
      } else {
        row.price_gap =
            std::abs(representation_price(model, u_n[i], seq.measures[i], x_n[i], f).price -
                     p_lim);
      }
    } catch (const LabError& e) {
      row.error = e.what();
    }
    rep.rows.push_back(std::move(row));
  }
  summarize(rep);
  return rep;
}

TruncationDemo counterexample_truncation(Counterexample which, int n,
                                         const GaussianGridSpec& grid) {
  if (n < 1) throw LabError(ErrorCode::kValidation, "perturbation index must be >= 1");
  if (grid.cutoffs.size() < 2 || grid.panels < 2)
    throw LabError(ErrorCode::kValidation, "grid needs at least two cutoffs and two panels");
  for (double m : grid.cutoffs)
    if (!(m > 0.0)) throw LabError(ErrorCode::kValidation, "cutoffs must be positive");

  TruncationDemo demo;
  demo.which = which;
  demo.n = n;
  demo.grid = grid;
  const double nn = static_cast<double>(n);

  auto log_asui1 = [&](double w) {
    // log Z^n + log phi_N, phi_N summed in log space.
    const double log_z = 0.5 * std::log(nn / (nn + 2.0)) + w * w / (nn + 2.0);
    double top = -std::numeric_limits<double>::infinity();
    std::vector<double> t;
    for (std::size_t k = 1; k <= grid.series_terms; ++k) {
      const double kk = static_cast<double>(k);
      t.push_back(-kk * std::log(2.0) + 0.5 * std::log(2.0 / kk) + (0.5 - 1.0 / kk) * w * w);
      top = std::max(top, t.back());
    }
    double acc = 0.0;
    for (double v : t) acc += std::exp(v - top);
    return log_z + top + std::log(acc) + log_normal_density(w);
  };
  auto log_asui = [&](double w) {
    const double q = grid.p / (1.0 - grid.p);
    const double cubic = w >= 0.0 ? (q - 1.0) / nn * w * w * w : 0.0;
    return cubic + q * grid.sharpe * w + log_normal_density(w);
  };

  if (which == Counterexample::kAsUI) {
    if (!(grid.p > 0.5 && grid.p < 1.0))
      throw LabError(ErrorCode::kValidation, "asUI demo needs p in (1/2, 1)");
  } else if (grid.series_terms < 1) {
    throw LabError(ErrorCode::kValidation, "series needs at least one term");
  }

  for (double m : grid.cutoffs) {
    const double lv = which == Counterexample::kAsUI1 ? log_simpson(m, grid.panels, log_asui1)
                                                      : log_simpson(m, grid.panels, log_asui);
    if (lv > std::log(std::numeric_limits<double>::max())) demo.overflow = true;
    demo.values.push_back(std::exp(lv));
  }
  demo.strictly_increasing = true;
  for (std::size_t i = 1; i < demo.values.size(); ++i)
    if (!(demo.values[i] > demo.values[i - 1])) demo.strictly_increasing = false;
  demo.ratio = demo.values.back() / demo.values.front();
  demo.diverges = demo.strictly_increasing && demo.ratio > kDivergenceRatio;
  return demo;
}

TwoFactorDemo two_factor_invariance_demo(const std::vector<double>& p_w) {
  const MarketModel model = catalog::two_factor();
  const std::vector<std::pair<std::string, UtilityField>> panel{
      {"log", UtilityField::log(4)},
      {"power:0.5", UtilityField::power(0.5, 4)},
      {"power:-1", UtilityField::power(-1.0, 4)}};
  Claim b_up(4), w_up(4);
  b_up << 1, 0, 1, 0;
  w_up << 1, 1, 0, 0;

  TwoFactorDemo demo;
  demo.p_w = p_w;
  for (const auto& [name, u] : panel) demo.utilities.push_back(name);
  double w_lo = std::numeric_limits<double>::infinity(), w_hi = -w_lo;
  for (double pw : p_w) {
    if (!(pw > 0.0 && pw < 1.0))
      throw LabError(ErrorCode::kValidation, "drift probabilities must lie in (0, 1)");
    const Measure p = catalog::two_factor_measure(pw);
    std::vector<double> b_row, w_row;
    for (const auto& [name, u] : panel) {
      const RepresentationPrice r = representation_price(model, u, p, 1.0, b_up);
      const Eigen::VectorXd q = p.weights().cwiseProduct(r.pricing_density);
      b_row.push_back(r.price);
      w_row.push_back(q.dot(w_up));
      demo.max_deviation = std::max(demo.max_deviation, std::abs(r.price - 0.5));
      w_lo = std::min(w_lo, w_row.back());
      w_hi = std::max(w_hi, w_row.back());
    }
    demo.b_prices.push_back(std::move(b_row));
    demo.w_prices.push_back(std::move(w_row));
  }
  demo.w_spread = p_w.empty() ? 0.0 : w_hi - w_lo;
  demo.pass = !p_w.empty() && demo.max_deviation <= kTwoFactorTolerance;
  return demo;
}

}  // namespace weakinfo
