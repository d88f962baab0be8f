#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "weakinfo/market.hpp"
#include "weakinfo/preferences.hpp"
#include "weakinfo/prob_space.hpp"

namespace weakinfo {

// Finite-valued random element: label index per outcome.
class RandomElement {
 public:
  // Every label in [0, num_labels) must be attained.
  RandomElement(std::vector<std::size_t> labels, std::size_t num_labels);
  // Identity labelling, one label per outcome.
  static RandomElement identity(std::size_t outcomes);
  // Labels by distinct values of a terminal random variable, in order of
  // first appearance.
  static RandomElement from_values(const Eigen::VectorXd& values);

  std::size_t num_outcomes() const { return labels_.size(); }
  std::size_t num_labels() const { return num_labels_; }
  std::size_t operator()(std::size_t outcome) const { return labels_.at(outcome); }

  // P(Y = label) for every label.
  Eigen::VectorXd law_under(const Measure& p) const;

 private:
  std::vector<std::size_t> labels_;
  std::size_t num_labels_;
};

// A probability law on the label set.
using Law = Measure;

// P^nu[w] = P[w] nu(Y(w)) / P(Y = Y(w)). Throws kLawMismatch unless nu and
// the P-law of Y charge the same labels.
Measure minimal_measure(const Measure& p, const RandomElement& y, const Law& nu);

// nu_n = (1 - 1/n) target + (1/n) start.
Law perturbed_law(const Law& target, const Law& start, std::size_t n);
// nu_1, ..., nu_{n_max}.
std::vector<Law> perturbation_sequence(const Law& target, const Law& start,
                                       std::size_t n_max);

// u(x, nu): optimal expected utility under P^nu. Complete models only.
double value_of_weak_information(const MarketModel& model, const UtilityField& u,
                                 double x, const RandomElement& y, const Law& nu,
                                 const Measure& p);

}  // namespace weakinfo
