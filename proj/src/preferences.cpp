#include "weakinfo/preferences.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "weakinfo/error.hpp"

namespace weakinfo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Base family without the affine wrap.
double base_value(const UtilityAtom& a, double x) {
  if (a.family == UtilityFamily::kLog) return x > 0.0 ? std::log(x) : -kInf;
  if (x > 0.0) return std::pow(x, a.p) / a.p;
  return a.p > 0.0 ? 0.0 : -kInf;
}

double base_marginal(const UtilityAtom& a, double x) {
  if (a.family == UtilityFamily::kLog) return 1.0 / x;
  return std::pow(x, a.p - 1.0);
}

double base_curvature(const UtilityAtom& a, double x) {
  if (a.family == UtilityFamily::kLog) return -1.0 / (x * x);
  return (a.p - 1.0) * std::pow(x, a.p - 2.0);
}

double base_inverse(const UtilityAtom& a, double y) {
  if (a.family == UtilityFamily::kLog) return 1.0 / y;
  return std::pow(y, 1.0 / (a.p - 1.0));
}

double base_inverse_derivative(const UtilityAtom& a, double y) {
  if (a.family == UtilityFamily::kLog) return -1.0 / (y * y);
  return std::pow(y, 1.0 / (a.p - 1.0) - 1.0) / (a.p - 1.0);
}

double base_conjugate(const UtilityAtom& a, double y) {
  if (a.family == UtilityFamily::kLog) return y > 0.0 ? -std::log(y) - 1.0 : kInf;
  const double q = a.conjugate_exponent();
  if (y > 0.0) return std::pow(y, -q) / q;
  return q > 0.0 ? kInf : 0.0;
}

}  // namespace

UtilityField::UtilityField(std::vector<UtilityAtom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw LabError(ErrorCode::kInvalidUtility, "empty utility field");
  for (const auto& a : atoms_) validate(a);
}

UtilityField UtilityField::deterministic(UtilityAtom atom, std::size_t outcomes) {
  return UtilityField(std::vector<UtilityAtom>(outcomes, atom));
}

bool UtilityField::is_deterministic() const {
  for (const auto& a : atoms_)
    if (!(a == atoms_.front())) return false;
  return true;
}

double UtilityField::value(std::size_t w, double x) const {
  const auto& a = atom(w);
  return a.scale * base_value(a, x) + a.shift;
}

double UtilityField::marginal(std::size_t w, double x) const {
  const auto& a = atom(w);
  return a.scale * base_marginal(a, x);
}

double UtilityField::curvature(std::size_t w, double x) const {
  const auto& a = atom(w);
  return a.scale * base_curvature(a, x);
}

UtilityField UtilityField::rescaled(const Eigen::VectorXd& c) const {
  if (static_cast<std::size_t>(c.size()) != atoms_.size())
    throw LabError(ErrorCode::kSpaceMismatch, "rescaling vector does not match the field");
  std::vector<UtilityAtom> out = atoms_;
  for (std::size_t w = 0; w < out.size(); ++w) {
    const double cw = c(static_cast<Eigen::Index>(w));
    if (!(cw > 0.0)) throw LabError(ErrorCode::kInvalidNumeraire, "rescaling must be positive");
    auto& a = out[w];
    if (a.family == UtilityFamily::kLog)
      a.shift += a.scale * std::log(cw);  // log(c x) = log x + log c
    else
      a.scale *= std::pow(cw, a.p);  // (c x)^p / p = c^p x^p / p
  }
  return UtilityField(std::move(out));
}

void UtilityField::validate(const UtilityAtom& a) {
  if (!(a.scale > 0.0) || !std::isfinite(a.scale) || !std::isfinite(a.shift))
    throw LabError(ErrorCode::kInvalidUtility, "scale must be positive and finite");
  if (a.family == UtilityFamily::kPower && !(a.p < 1.0 && a.p != 0.0 && std::isfinite(a.p)))
    throw LabError(ErrorCode::kInvalidUtility, "power utility needs p < 1, p != 0");
  // Grid certificate of monotone, strictly concave and Inada behaviour.
  constexpr int kPoints = 100;
  double prev = kInf;
  double first = 0.0, last = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double x = std::pow(10.0, -6.0 + 12.0 * i / (kPoints - 1));
    const double m = a.scale * base_marginal(a, x);
    if (!(m > 0.0) || !(m < prev))
      throw LabError(ErrorCode::kInvalidUtility, "marginal utility is not strictly decreasing");
    if (i == 0) first = m;
    last = m;
    prev = m;
  }
  // Inada holds analytically for the family; the grid only rules out
  // degenerate parameters that make U' numerically flat.
  if (!std::isfinite(first) || !(first > last * (1.0 + 1e-9)))
    throw LabError(ErrorCode::kInvalidUtility, "marginal utility is numerically flat");
}

std::string UtilityField::describe() const {
  std::ostringstream os;
  if (is_deterministic()) {
    const auto& a = atoms_.front();
    if (a.family == UtilityFamily::kLog)
      os << "log";
    else
      os << "power:" << a.p;
    if (a.scale != 1.0 || a.shift != 0.0) os << " (scale " << a.scale << ", shift " << a.shift << ")";
  } else {
    os << "stochastic field over " << atoms_.size() << " outcomes";
  }
  return os.str();
}

double ConjugateField::value(std::size_t w, double y) const {
  const auto& a = atoms_.at(w);
  // V(y) = a * Vbase(y / a) + b for U = a * Ubase + b.
  return a.scale * base_conjugate(a, y / a.scale) + a.shift;
}

double ConjugateField::derivative(std::size_t w, double y) const {
  const auto& a = atoms_.at(w);
  return -base_inverse(a, y / a.scale);
}

double ConjugateField::second_derivative(std::size_t w, double y) const {
  const auto& a = atoms_.at(w);
  return -base_inverse_derivative(a, y / a.scale) / a.scale;
}

bool ConjugateField::bounded_above(std::size_t w) const {
  const auto& a = atoms_.at(w);
  return a.family == UtilityFamily::kPower && a.p < 0.0;
}

ConjugateField conjugate(const UtilityField& u) {
  std::vector<UtilityAtom> atoms;
  for (std::size_t w = 0; w < u.size(); ++w) atoms.push_back(u.atom(w));
  return ConjugateField(std::move(atoms));
}

double inverse_marginal(const UtilityField& u, std::size_t w, double y) {
  if (!(y > 0.0)) throw LabError(ErrorCode::kDomainError, "inverse marginal needs y > 0");
  const auto& a = u.atom(w);
  return base_inverse(a, y / a.scale);
}

double gamma_divergence(const ConjugateField& v, std::size_t w, double x, double y) {
  if (!(x > 0.0) || !(y > 0.0))
    throw LabError(ErrorCode::kDomainError, "convexity gap needs positive arguments");
  return 0.5 * (v.value(w, x) + v.value(w, y)) - v.value(w, 0.5 * (x + y));
}

}  // namespace weakinfo
