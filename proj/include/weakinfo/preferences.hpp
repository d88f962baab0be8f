#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace weakinfo {

enum class UtilityFamily { kPower, kLog };

// scale * base(x) + shift, with base(x) = x^p / p (p < 1, p != 0) or log x.
struct UtilityAtom {
  UtilityFamily family = UtilityFamily::kLog;
  double p = 0.0;
  double scale = 1.0;
  double shift = 0.0;

  static UtilityAtom log() { return {UtilityFamily::kLog, 0.0, 1.0, 0.0}; }
  static UtilityAtom power(double p) { return {UtilityFamily::kPower, p, 1.0, 0.0}; }

  // Conjugate exponent q = p / (1 - p) for the power family.
  double conjugate_exponent() const { return p / (1.0 - p); }

  bool operator==(const UtilityAtom&) const = default;
};

// Utility stochastic field on a finite outcome set: one atom per outcome.
class UtilityField {
 public:
  // Validates every atom (see validate()).
  explicit UtilityField(std::vector<UtilityAtom> atoms);

  static UtilityField deterministic(UtilityAtom atom, std::size_t outcomes);
  static UtilityField log(std::size_t outcomes) {
    return deterministic(UtilityAtom::log(), outcomes);
  }
  static UtilityField power(double p, std::size_t outcomes) {
    return deterministic(UtilityAtom::power(p), outcomes);
  }

  std::size_t size() const { return atoms_.size(); }
  const UtilityAtom& atom(std::size_t w) const { return atoms_.at(w); }
  bool is_deterministic() const;

  // U(w, x); x = 0 gives the limit, possibly -infinity.
  double value(std::size_t w, double x) const;
  double marginal(std::size_t w, double x) const;
  double curvature(std::size_t w, double x) const;  // U''

  // x -> U(w, c(w) x): the field seen in a new numeraire whose terminal
  // value is c. Stays inside the power/log family.
  UtilityField rescaled(const Eigen::VectorXd& c) const;

  // Throws kInvalidUtility when an atom leaves the supported family or the
  // Inada grid check fails.
  static void validate(const UtilityAtom& atom);

  std::string describe() const;

 private:
  std::vector<UtilityAtom> atoms_;
};

// V(w, y) = sup_{x > 0} (U(w, x) - x y), in closed form.
class ConjugateField {
 public:
  explicit ConjugateField(std::vector<UtilityAtom> atoms) : atoms_(std::move(atoms)) {}

  std::size_t size() const { return atoms_.size(); }
  double value(std::size_t w, double y) const;
  double derivative(std::size_t w, double y) const;
  double second_derivative(std::size_t w, double y) const;
  // True for the power family with p < 0, where V <= shift.
  bool bounded_above(std::size_t w) const;

 private:
  std::vector<UtilityAtom> atoms_;
};

ConjugateField conjugate(const UtilityField& u);

// (U')^{-1}(y) = -V'(y). Throws kDomainError for y <= 0.
double inverse_marginal(const UtilityField& u, std::size_t w, double y);

// (V(x) + V(y)) / 2 - V((x + y) / 2) >= 0.
double gamma_divergence(const ConjugateField& v, std::size_t w, double x, double y);

}  // namespace weakinfo
