#pragma once

#include <string>
#include <vector>

// Polynomial control ramps on the dimensionless time s = t/tau in [0, 1].
//
// Ramps are stored as monomial coefficients, so derivatives up to third
// order are available analytically; both case studies need smooth boundary
// behaviour (vanishing first and second derivatives at the endpoints) which
// the factory ramps below provide by construction.

namespace qcost::protocols {

class SmoothRamp {
 public:
  /// Build a ramp from monomial coefficients, ascending in degree:
  /// r(s) = coeffs[0] + coeffs[1] s + coeffs[2] s^2 + ...
  explicit SmoothRamp(std::vector<double> coeffs, std::string description = "");

  /// Evaluate the ramp (order 0) or its derivative d^order r / ds^order for
  /// order in {1, 2, 3}.  Throws std::domain_error for s outside [0, 1] and
  /// std::invalid_argument for unsupported orders.
  double eval(double s, int order = 0) const;

  const std::vector<double>& coefficients() const noexcept { return coeffs_[0]; }
  const std::string& description() const noexcept { return description_; }

 private:
  // coeffs_[k] holds the monomial coefficients of the k-th derivative.
  std::vector<double> coeffs_[4];
  std::string description_;
};

/// Quintic ramp from -1 to +1 with r'(0) = r'(1) = r''(0) = r''(1) = 0:
/// r(s) = 20 s^3 - 30 s^4 + 12 s^5 - 1.
SmoothRamp lz_quintic();

/// Trap-frequency scale factor running from 1 to 1/sqrt(c) with vanishing
/// first, second and third derivatives at both ends:
/// lambda(s) = 1 - alpha (35 s^4 - 84 s^5 + 70 s^6 - 20 s^7),
/// alpha = 1 - 1/sqrt(c).  c > 1 is a compression (lambda decreasing,
/// final frequency higher), c < 1 an expansion.
SmoothRamp penning_lambda(double c);

}  // namespace qcost::protocols
