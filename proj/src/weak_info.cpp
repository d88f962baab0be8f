#include "weakinfo/weak_info.hpp"

#include <map>

#include "weakinfo/duality.hpp"
#include "weakinfo/error.hpp"

namespace weakinfo {

RandomElement::RandomElement(std::vector<std::size_t> labels, std::size_t num_labels)
    : labels_(std::move(labels)), num_labels_(num_labels) {
  std::vector<bool> hit(num_labels_, false);
  for (std::size_t l : labels_) {
    if (l >= num_labels_) throw LabError(ErrorCode::kLawMismatch, "label out of range");
    hit[l] = true;
  }
  for (std::size_t l = 0; l < num_labels_; ++l)
    if (!hit[l])
      throw LabError(ErrorCode::kLawMismatch, "label " + std::to_string(l) + " is never attained");
}

RandomElement RandomElement::identity(std::size_t outcomes) {
  std::vector<std::size_t> labels(outcomes);
  for (std::size_t i = 0; i < outcomes; ++i) labels[i] = i;
  return RandomElement(std::move(labels), outcomes);
}

RandomElement RandomElement::from_values(const Eigen::VectorXd& values) {
  std::vector<double> seen;
  std::vector<std::size_t> labels;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    std::size_t l = 0;
    while (l < seen.size() && seen[l] != values(i)) ++l;
    if (l == seen.size()) seen.push_back(values(i));
    labels.push_back(l);
  }
  return RandomElement(std::move(labels), seen.size());
}

Eigen::VectorXd RandomElement::law_under(const Measure& p) const {
  if (p.size() != labels_.size())
    throw LabError(ErrorCode::kSpaceMismatch, "measure does not match the random element");
  Eigen::VectorXd law = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(num_labels_));
  for (std::size_t i = 0; i < labels_.size(); ++i)
    law(static_cast<Eigen::Index>(labels_[i])) += p[i];
  return law;
}

Measure minimal_measure(const Measure& p, const RandomElement& y, const Law& nu) {
  if (nu.size() != y.num_labels())
    throw LabError(ErrorCode::kLawMismatch, "law and random element disagree on the label set");
  const Eigen::VectorXd base = y.law_under(p);
  for (Eigen::Index l = 0; l < base.size(); ++l)
    if ((base(l) > 0.0) != (nu[static_cast<std::size_t>(l)] > 0.0))
      throw LabError(ErrorCode::kLawMismatch,
                     "law is not equivalent to the law of Y at label " + std::to_string(l));
  Eigen::VectorXd w(static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::size_t l = y(i);
    const double mass = base(static_cast<Eigen::Index>(l));
    w(static_cast<Eigen::Index>(i)) = mass > 0.0 ? p[i] * nu[l] / mass : 0.0;
  }
  return Measure(std::move(w));
}

Law perturbed_law(const Law& target, const Law& start, std::size_t n) {
  if (n == 0) throw LabError(ErrorCode::kDomainError, "perturbation index starts at 1");
  if (target.size() != start.size())
    throw LabError(ErrorCode::kLawMismatch, "laws live on different label sets");
  for (std::size_t l = 0; l < target.size(); ++l)
    if ((target[l] > 0.0) != (start[l] > 0.0))
      throw LabError(ErrorCode::kLawMismatch, "start and target laws are not equivalent");
  return Measure::mixture(target, start, 1.0 / static_cast<double>(n));
}

std::vector<Law> perturbation_sequence(const Law& target, const Law& start,
                                       std::size_t n_max) {
  std::vector<Law> out;
  out.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) out.push_back(perturbed_law(target, start, n));
  return out;
}

double value_of_weak_information(const MarketModel& model, const UtilityField& u,
                                 double x, const RandomElement& y, const Law& nu,
                                 const Measure& p) {
  if (!is_complete(model))
    throw LabError(ErrorCode::kCompletenessRequired,
                   "value of weak information is defined here for complete models only");
  return solve_primal(model, u, minimal_measure(p, y, nu), x).value;
}

}  // namespace weakinfo
