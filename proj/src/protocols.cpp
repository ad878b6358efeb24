#include "qcost/protocols.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qcost::protocols {

namespace {

std::vector<double> differentiate(const std::vector<double>& c) {
  std::vector<double> d;
  if (c.size() > 1) {
    d.reserve(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) {
      d.push_back(static_cast<double>(k) * c[k]);
    }
  }
  return d;
}

double horner(const std::vector<double>& c, double s) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * s + c[i];
  return acc;
}

}  // namespace

SmoothRamp::SmoothRamp(std::vector<double> coeffs, std::string description)
    : description_(std::move(description)) {
  if (coeffs.empty()) throw std::invalid_argument("SmoothRamp: empty coefficient list");
  coeffs_[0] = std::move(coeffs);
  for (int k = 1; k <= 3; ++k) coeffs_[k] = differentiate(coeffs_[k - 1]);
}

double SmoothRamp::eval(double s, int order) const {
  if (order < 0 || order > 3) {
    throw std::invalid_argument("SmoothRamp::eval: derivative order must be in [0, 3]");
  }
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::domain_error("SmoothRamp::eval: s outside [0, 1]");
  }
  const auto& c = coeffs_[order];
  return c.empty() ? 0.0 : horner(c, s);
}

SmoothRamp lz_quintic() {
  return SmoothRamp({-1.0, 0.0, 0.0, 20.0, -30.0, 12.0}, "quintic sweep -1 -> +1");
}

SmoothRamp penning_lambda(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("penning_lambda: c must be positive");
  const double alpha = 1.0 - 1.0 / std::sqrt(c);
  return SmoothRamp({1.0, 0.0, 0.0, 0.0, -35.0 * alpha, 84.0 * alpha, -70.0 * alpha, 20.0 * alpha},
                    "septic trap ramp 1 -> 1/sqrt(c)");
}

}  // namespace qcost::protocols
