#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "weakinfo/market.hpp"
#include "weakinfo/preferences.hpp"
#include "weakinfo/prob_space.hpp"

namespace weakinfo {

// Claim quantities at which the defining inequality is tested.
inline constexpr std::array<double, 8> kDefinitionalGrid = {1.0,  -1.0, 0.5,  -0.5,
                                                            0.1,  -0.1, 0.01, -0.01};
inline constexpr double kMartingaleCertificateTolerance = 1e-9;
inline constexpr double kDefinitionalTolerance = 1e-6;
inline constexpr double kUniquenessOffset = 1e-3;

struct DefinitionalProbe {
  double q = 0.0;
  double slack = 0.0;  // u(x - q * price, q) - u(x)
};

struct PriceReport {
  double price = 0.0;
  double y_star = 0.0;
  double u_x = 0.0;
  Eigen::VectorXd pricing_density;  // dQ/dP at the dual optimum for y_star
  double martingale_certificate = 0.0;
  double definitional_check = 0.0;  // max slack over the grid
  std::vector<DefinitionalProbe> probes;
};

// Price E_P[z f] from the dual optimum at y = u'(x), without the
// definitional verification.
struct RepresentationPrice {
  double price = 0.0;
  double y_star = 0.0;
  double u_x = 0.0;
  Eigen::VectorXd pricing_density;
  double martingale_certificate = 0.0;
};

// Worst node-level martingale residual of Q = P z, including the mass
// condition.
double martingale_certificate(const MarketModel& model, const Measure& p,
                              const Eigen::VectorXd& z);

// Throws kMartingalePropertyViolation when the certificate exceeds 1e-9.
RepresentationPrice representation_price(const MarketModel& model, const UtilityField& u,
                                         const Measure& p, double x, const Claim& f);

// Representation price plus the definitional check over the q-grid.
PriceReport indifference_price(const MarketModel& model, const UtilityField& u,
                               const Measure& p, double x, const Claim& f);

// max over the grid of u(x - q * price, q) - u_x.
double definitional_slack(const MarketModel& model, const UtilityField& u, const Measure& p,
                          double x, const Claim& f, double price, double u_x,
                          std::vector<DefinitionalProbe>* probes = nullptr);

// Checks that price -/+ offset both violate the definition for some grid q.
struct UniquenessProbe {
  double lower_slack = 0.0;
  double upper_slack = 0.0;
  bool singleton = false;
};
UniquenessProbe uniqueness_probe(const MarketModel& model, const UtilityField& u,
                                 const Measure& p, double x, const Claim& f,
                                 const PriceReport& report,
                                 double offset = kUniquenessOffset);

struct Scenario {
  double x = 1.0;
  UtilityField utility;
  Measure measure;
};

struct InvarianceResult {
  bool invariant = false;
  double spread = 0.0;
  std::vector<double> prices;  // by scenario index
};

inline double invariance_tolerance(const Claim& f) {
  return 1e-7 * (1.0 + f.cwiseAbs().maxCoeff());
}

InvarianceResult invariance_check(const Claim& f, const std::vector<Scenario>& scenarios,
                                  const MarketModel& model);

// Pricing measures Q(y_star) per scenario; prices of any claim are then
// linear in f.
std::vector<Eigen::VectorXd> pricing_measures(const MarketModel& model,
                                              const std::vector<Scenario>& scenarios);
InvarianceResult invariance_check(const Claim& f,
                                  const std::vector<Eigen::VectorXd>& measures);

struct InvariantBasis {
  Eigen::MatrixXd basis;  // orthonormal columns spanning the subspace
  bool inconclusive = false;
  std::size_t distinct_measures = 0;
};

// Orthogonal complement of the span of pricing-measure differences. Flags
// the result as inconclusive when an incomplete model produced a single
// pricing measure, in which case the full claim space is returned.
InvariantBasis invariant_claim_basis(const MarketModel& model,
                                     const std::vector<Scenario>& scenarios);
// As above but throws kInconclusiveBasis instead of flagging.
Eigen::MatrixXd invariant_claim_basis_strict(const MarketModel& model,
                                             const std::vector<Scenario>& scenarios);

// Price of f (possibly unbounded) via the market expressed in units of
// `asset`: the claim and utility are moved to the new unit, priced there,
// and the price converted back with the asset's initial price.
double numeraire_price(const MarketModel& model, std::size_t asset, const UtilityField& u,
                       const Measure& p, double x, const Claim& f);

}  // namespace weakinfo
