#pragma once

#include <cstddef>
#include <utility>

#include "qcost/circuit.hpp"
#include "qcost/protocols.hpp"

// Penning-trap compression/expansion case study.
//
// The radial trap frequency omega_r is steered from omega_r(0) to
// c * omega_r(0) through the invariant-based length-scale function
// lambda(s), s = t/tau, which solves the Ermakov equation
//
//     lambda'' + (omega_r tau)^2 lambda = eta^2 / lambda^3,
//
// with eta = tau * omega_r(0) the dimensionless operation time.  Inverting
// that relation gives the axial field profile the coils must produce:
//
//     B_z(s tau) = (hbar / q l0^2) (1/lambda^2)
//                  sqrt(1 - lambda^3 lambda'' / eta^2
//                         + nu^2 lambda^4 / (2 - nu^2)),
//
// real only when the radicand is nonnegative (a hard realizability
// constraint on eta).  The entropy cost splits into a dynamical part
//
//     zeta_d = Int_0^1 [ eta / lambda^4 - lambda'' / (lambda eta) ] ds
//
// plus the static confinement term eta nu^2 / (2 - nu^2).

namespace qcost::penning {

struct PenningConfig {
  /// Full constructor; validates c > 0, eta > 0, 0 < nu < sqrt(2),
  /// l0, m, q > 0 and throws std::invalid_argument otherwise.
  PenningConfig(double c_, double eta_, double nu_, double l0_, double m_, double q_);

  /// Convenience constructor with the default ion (9Be+) and a radial
  /// length set by a 2 pi x 1 MHz initial radial frequency.
  PenningConfig(double c_, double eta_, double nu_);

  double c;    ///< frequency ratio omega_r(tau) / omega_r(0); c > 1 compresses
  double eta;  ///< dimensionless operation time tau * omega_r(0)
  double nu;   ///< omega_z / omega(0), axial-to-rotation frequency ratio
  double l0;   ///< initial radial oscillator length (m)
  double m;    ///< ion mass (kg)
  double q;    ///< ion charge (C)
  protocols::SmoothRamp lambda;  ///< length-scale ramp from protocols

  /// Radial length l0 for which omega_r(0) = 2 pi * radial_frequency_hz.
  static double default_radial_length(double mass, double radial_frequency_hz = 1.0e6);
};

/// omega_r(0) = hbar / (2 m l0^2), rad/s.
double radial_frequency0(const PenningConfig& cfg);

/// Physical protocol duration tau = eta / omega_r(0) = 2 m l0^2 eta / hbar.
double duration(const PenningConfig& cfg);

/// Axial field B_z(s tau) in tesla.  Throws ConstraintError (carrying the
/// offending s) when the radicand goes negative, i.e. when the requested
/// protocol would need an imaginary field.
double bz_profile(const PenningConfig& cfg, double s);

/// Radial frequency omega_r(s tau) recovered from the field profile via
/// omega = q B_z / (2m), omega_r^2 = omega^2 - omega_z^2 / 2.
double radial_frequency(const PenningConfig& cfg, double s);

/// Smallest eta for which the field stays real on [0,1]:
/// max over s of sqrt(lambda^3 lambda'' / (1 + nu^2 lambda^4 / (2 - nu^2))),
/// taken over the s where lambda^3 lambda'' > 0 (0 when there are none).
/// Dense grid scan (grid >= 1000 points) plus golden-section refinement.
double min_eta(double c, double nu, std::size_t grid = 100000);

/// Dynamical entropy zeta_d (dimensionless).
double zeta_d(const PenningConfig& cfg);

/// The two addends of zeta_d separately:
/// first = eta * Int 1/lambda^4, second = -(1/eta) * Int lambda''/lambda.
std::pair<double, double> zeta_d_terms(const PenningConfig& cfg);

/// Bures angle between initial and final ground states:
/// arccos(2 sqrt(c) / (1 + c)); symmetric under c -> 1/c.
double bures_penning(double c);

/// The compression ratio (> 1) or expansion ratio (< 1) whose Bures angle
/// equals `bures`; the two are reciprocals.
double ratio_for_bures(double bures, bool compression);

/// Applicable lower bound on zeta_d, from |lambda''|_max = 84|alpha|/(5 sqrt 5):
///   expansion  (c < 1):  max[0, c^2 eta - |lambda''|_max / eta]
///   compression(c >= 1): max[0,     eta - |lambda''|_max sqrt(c) / eta]
double zeta_bounds(const PenningConfig& cfg);

/// Ermakov-equation residual lambda'' + w^2 lambda - eta^2 / lambda^3 at s,
/// with w = omega_r(s tau) * tau taken from the field profile.  Zero up to
/// rounding by construction of the inversion formula; a nonzero value flags
/// an inconsistent field computation.
double ermakov_residual(const PenningConfig& cfg, double s);

/// Full entropy summary in SI units.
struct PenningEntropy {
  double zeta_d = 0.0;
  double static_term = 0.0;    ///< eta nu^2 / (2 - nu^2)
  double si_prefactor = 0.0;   ///< 2 m hbar chi / (q^2 l0^2), J/K
  double sigma_total = 0.0;    ///< si_prefactor * (zeta_d + static_term), J/K
  double bures = 0.0;          ///< rad
  double lower_bound = 0.0;    ///< zeta_bounds value; zeta_d >= lower_bound
};

/// Assemble the SI entropy report for one configuration and circuit.
/// sigma_total equals circuit.protocol_entropy of bz_profile(t / tau) over
/// the physical duration, up to quadrature tolerance.
PenningEntropy entropy_report(const PenningConfig& cfg, const circuit::CircuitParams& p);

}  // namespace qcost::penning
