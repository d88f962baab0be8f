#include "weakinfo/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "weakinfo/duality.hpp"
#include "weakinfo/error.hpp"

namespace weakinfo {
namespace {

constexpr double kDistinctMeasureTolerance = 1e-8;
constexpr double kRankTolerance = 1e-8;

}  // namespace

double martingale_certificate(const MarketModel& model, const Measure& p,
                              const Eigen::VectorXd& z) {
  if (static_cast<std::size_t>(z.size()) != model.num_outcomes() ||
      p.size() != model.num_outcomes())
    throw LabError(ErrorCode::kSpaceMismatch, "density does not match the model");
  const Eigen::VectorXd q = p.weights().cwiseProduct(z);
  double worst = std::abs(q.sum() - 1.0);
  if (q.minCoeff() < 0.0) worst = std::max(worst, -q.minCoeff());
  const Eigen::MatrixXd g = model.gains_matrix();
  if (g.cols() > 0) worst = std::max(worst, (g.transpose() * q).cwiseAbs().maxCoeff());
  return worst;
}

RepresentationPrice representation_price(const MarketModel& model, const UtilityField& u,
                                         const Measure& p, double x, const Claim& f) {
  if (static_cast<std::size_t>(f.size()) != model.num_outcomes())
    throw LabError(ErrorCode::kSpaceMismatch, "claim does not match the model");
  const PrimalSolution sol = solve_primal(model, u, p, x);
  RepresentationPrice out;
  out.y_star = sol.y_star;
  out.u_x = sol.value;
  out.pricing_density = sol.dual.z_hat.values;
  out.martingale_certificate = martingale_certificate(model, p, out.pricing_density);
  if (!(out.martingale_certificate <= kMartingaleCertificateTolerance))
    throw LabError(ErrorCode::kMartingalePropertyViolation,
                   "pricing density fails the martingale certificate (residual " +
                       std::to_string(out.martingale_certificate) + ")");
  out.price = p.weights().cwiseProduct(out.pricing_density).dot(f);
  return out;
}

double definitional_slack(const MarketModel& model, const UtilityField& u, const Measure& p,
                          double x, const Claim& f, double price, double u_x,
                          std::vector<DefinitionalProbe>* probes) {
  double worst = -std::numeric_limits<double>::infinity();
  for (double q : kDefinitionalGrid) {
    const double v = primal_with_endowment(model, u, p, x - q * price, q, f);
    const double slack = v - u_x;
    worst = std::max(worst, slack);
    if (probes) probes->push_back({q, slack});
  }
  return worst;
}

PriceReport indifference_price(const MarketModel& model, const UtilityField& u,
                               const Measure& p, double x, const Claim& f) {
  const RepresentationPrice rep = representation_price(model, u, p, x, f);
  PriceReport out;
  out.price = rep.price;
  out.y_star = rep.y_star;
  out.u_x = rep.u_x;
  out.pricing_density = rep.pricing_density;
  out.martingale_certificate = rep.martingale_certificate;
  out.definitional_check =
      definitional_slack(model, u, p, x, f, out.price, out.u_x, &out.probes);
  return out;
}

UniquenessProbe uniqueness_probe(const MarketModel& model, const UtilityField& u,
                                 const Measure& p, double x, const Claim& f,
                                 const PriceReport& report, double offset) {
  UniquenessProbe out;
  out.lower_slack = definitional_slack(model, u, p, x, f, report.price - offset, report.u_x);
  out.upper_slack = definitional_slack(model, u, p, x, f, report.price + offset, report.u_x);
  out.singleton =
      out.lower_slack > kDefinitionalTolerance && out.upper_slack > kDefinitionalTolerance;
  return out;
}

std::vector<Eigen::VectorXd> pricing_measures(const MarketModel& model,
                                              const std::vector<Scenario>& scenarios) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(scenarios.size());
  const Claim zero = Claim::Zero(static_cast<Eigen::Index>(model.num_outcomes()));
  for (const auto& s : scenarios) {
    const RepresentationPrice rep = representation_price(model, s.utility, s.measure, s.x, zero);
    out.push_back(s.measure.weights().cwiseProduct(rep.pricing_density));
  }
  return out;
}

InvarianceResult invariance_check(const Claim& f,
                                  const std::vector<Eigen::VectorXd>& measures) {
  InvarianceResult out;
  if (measures.empty()) throw LabError(ErrorCode::kValidation, "no scenarios to compare");
  for (const auto& q : measures) {
    if (q.size() != f.size())
      throw LabError(ErrorCode::kSpaceMismatch, "claim does not match the scenario measures");
    out.prices.push_back(q.dot(f));
  }
  const auto [lo, hi] = std::minmax_element(out.prices.begin(), out.prices.end());
  out.spread = *hi - *lo;
  out.invariant = out.spread <= invariance_tolerance(f);
  return out;
}

InvarianceResult invariance_check(const Claim& f, const std::vector<Scenario>& scenarios,
                                  const MarketModel& model) {
  return invariance_check(f, pricing_measures(model, scenarios));
}

InvariantBasis invariant_claim_basis(const MarketModel& model,
                                     const std::vector<Scenario>& scenarios) {
  const auto measures = pricing_measures(model, scenarios);
  const Eigen::Index n = static_cast<Eigen::Index>(model.num_outcomes());
  InvariantBasis out;
  if (measures.empty()) throw LabError(ErrorCode::kValidation, "no scenarios to sample");

  Eigen::MatrixXd diffs(n, 0);
  std::vector<Eigen::VectorXd> distinct{measures.front()};
  for (std::size_t i = 1; i < measures.size(); ++i) {
    bool is_new = true;
    for (const auto& d : distinct)
      if ((measures[i] - d).cwiseAbs().maxCoeff() <= kDistinctMeasureTolerance) is_new = false;
    if (!is_new) continue;
    diffs.conservativeResize(Eigen::NoChange, diffs.cols() + 1);
    diffs.col(diffs.cols() - 1) = measures[i] - measures.front();
    distinct.push_back(measures[i]);
  }
  out.distinct_measures = distinct.size();

  if (diffs.cols() == 0) {
    out.inconclusive = !is_complete(model);
    out.basis = Eigen::MatrixXd::Identity(n, n);
    return out;
  }
  // Null space of diffs^T via a full SVD of the n x k difference matrix.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs, Eigen::ComputeFullU);
  const Eigen::VectorXd& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankTolerance * std::max(1.0, sv(0))) ++rank;
  out.basis = svd.matrixU().rightCols(n - rank);
  return out;
}

Eigen::MatrixXd invariant_claim_basis_strict(const MarketModel& model,
                                             const std::vector<Scenario>& scenarios) {
  InvariantBasis b = invariant_claim_basis(model, scenarios);
  if (b.inconclusive)
    throw LabError(ErrorCode::kInconclusiveBasis,
                   "all sampled pricing measures coincide in an incomplete model");
  return b.basis;
}

double numeraire_price(const MarketModel& model, std::size_t asset, const UtilityField& u,
                       const Measure& p, double x, const Claim& f) {
  if (asset == kRiskless) return representation_price(model, u, p, x, f).price;
  const auto [tilde_model, tilde_f] = change_numeraire(model, asset, f);
  const double s0 = model.price(asset, model.space().root());
  const UtilityField tilde_u = u.rescaled(model.terminal_prices(asset));
  return s0 * representation_price(tilde_model, tilde_u, p, x / s0, tilde_f).price;
}

}  // namespace weakinfo
