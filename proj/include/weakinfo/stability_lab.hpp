#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "weakinfo/market.hpp"
#include "weakinfo/preferences.hpp"
#include "weakinfo/prob_space.hpp"

namespace weakinfo {

inline constexpr double kValueGapTolerance = 1e-6;
inline constexpr double kDivergenceRatio = 10.0;
inline constexpr double kTwoFactorTolerance = 1e-7;

// Indexed measures P^n converging to `limit`.
struct MeasureSequence {
  std::vector<std::size_t> n;
  std::vector<Measure> measures;
  Measure limit;
};

// About `count` distinct integers log-spaced on [n_min, n_max], both ends
// included.
std::vector<std::size_t> log_spaced_indices(std::size_t n_min, std::size_t n_max,
                                            std::size_t count);

// P^n = (1 - 1/n) limit + (1/n) start.
MeasureSequence mixture_sequence(const Measure& limit, const Measure& start,
                                 const std::vector<std::size_t>& n);

enum class GapColumn { kValue, kDual, kPrimalOptimizer, kDualOptimizer, kPrice };

struct ConvergenceRow {
  std::size_t n = 0;
  double tv = 0.0;
  double u_gap = 0.0;
  double v_gap = 0.0;
  double x_opt_gap = 0.0;
  double y_opt_gap = 0.0;
  double price_gap = 0.0;
  double definitional_slack = 0.0;  // price experiment only
  std::string error;                // solver error at this n, if any

  double gap(GapColumn c) const;
};

struct ConvergenceReport {
  std::string experiment;
  std::vector<GapColumn> columns;  // gaps the verdict is taken over
  std::vector<ConvergenceRow> rows;
  double tolerance = kValueGapTolerance;
  bool verdict = false;        // last 3 active gaps below tolerance
  bool monotone_tail = false;  // last 5 active gaps non-increasing
  double slope = 0.0;          // log-log slope of the first active gap against n
  double gap_constant = 0.0;   // max gap / tv over the sweep

  std::string to_csv() const;
};

// Fills verdict, monotone_tail, slope and gap_constant from rows.
void summarize(ConvergenceReport& report);

// |u_n(x) - u(x)| and |v_n(y) - v(y)| under each P^n.
ConvergenceReport run_value_convergence(const MarketModel& model, const UtilityField& u,
                                        const MeasureSequence& seq, double x, double y,
                                        double tolerance = kValueGapTolerance);

// Sup-norm gaps of optimal terminal wealth at x_n and of y_n * z_n.
ConvergenceReport run_optimizer_convergence(const MarketModel& model, const UtilityField& u,
                                            const MeasureSequence& seq,
                                            const std::vector<double>& x_n, double x_limit,
                                            double tolerance = kValueGapTolerance);

// |p_n - p| for the representation price, with the definitional check at
// every n recorded per row.
ConvergenceReport run_price_convergence(const MarketModel& model,
                                        const std::vector<UtilityField>& u_n,
                                        const UtilityField& u_limit, const MeasureSequence& seq,
                                        const std::vector<double>& x_n, double x_limit,
                                        const Claim& f, double tolerance = kValueGapTolerance,
                                        bool definitional = true);

enum class Counterexample { kAsUI1, kAsUI };

struct GaussianGridSpec {
  std::vector<double> cutoffs{2.0, 4.0, 6.0, 8.0};  // in standard deviations
  std::size_t panels = 4000;                        // Simpson panels per cutoff
  std::size_t series_terms = 8;                     // N, asUI1 only
  double p = 0.75;                                  // utility exponent, asUI only
  double sharpe = 0.5;                              // mu / sigma, asUI only
};

struct TruncationDemo {
  Counterexample which = Counterexample::kAsUI1;
  int n = 0;
  GaussianGridSpec grid;
  std::vector<double> values;  // truncated expectation per cutoff
  bool strictly_increasing = false;
  double ratio = 0.0;  // last / first
  bool diverges = false;
  bool overflow = false;
};

// Truncated-Gaussian quadrature of the integrals whose finiteness the
// integrability assumptions require.
TruncationDemo counterexample_truncation(Counterexample which, int n,
                                         const GaussianGridSpec& grid = {});

struct TwoFactorDemo {
  std::vector<double> p_w;
  std::vector<std::string> utilities;
  std::vector<std::vector<double>> b_prices;  // [drift][utility]
  std::vector<std::vector<double>> w_prices;  // control claim, W up
  double max_deviation = 0.0;                 // from P(B up) = 0.5
  double w_spread = 0.0;
  bool pass = false;
};

TwoFactorDemo two_factor_invariance_demo(const std::vector<double>& p_w);

}  // namespace weakinfo
