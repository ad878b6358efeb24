#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <utility>

#include "qcost/protocols.hpp"

// Two-level avoided-crossing case study.
//
// The bare Hamiltonian is H0 = hbar Delta sigma_x + hbar g(t) sigma_z with
// g(t) = g0 * ramp(t/tau) swept from -g0 to +g0.  Adding the counterdiabatic
// term H_CD = -hbar g_cd(t) sigma_y, with
//
//     g_cd = Delta gdot / (2 (Delta^2 + g^2)),
//
// keeps the state on the instantaneous ground level exactly, for any speed.
// Both control fields are produced by coils (g = mu B_z / hbar, and the CD
// axis likewise), so each carries an entropy cost.  In units where the cost
// prefactor is stripped off, the two contributions are
//
//     zeta_z  = tau * Int_0^1 G(s)^2 ds            (grows with tau)
//     zeta_cd = (1/tau) * Int_0^1 Delta^2 G'(s)^2
//               / (4 (Delta^2 + G(s)^2)^2) ds      (shrinks with tau)
//
// with G(s) = g0 ramp(s).  Their sum is minimized at tau_min with value
// zeta_min, and zeta_cd * tau is bounded below by the squared Bures angle
// between the initial and target ground states, arctan^2(g0/Delta).

namespace qcost::landau_zener {

struct LzConfig {
  /// Validates delta, g0, tau, mu > 0; throws std::invalid_argument otherwise.
  LzConfig(double delta_, double g0_, double tau_, double mu_,
           protocols::SmoothRamp ramp_ = protocols::lz_quintic());

  double delta;  ///< static transverse field Delta (rad/s)
  double g0;     ///< sweep amplitude (rad/s); g runs from -g0 to +g0
  double tau;    ///< protocol duration (s)
  double mu;     ///< magnetic moment coupling g = mu B / hbar (J/T)
  protocols::SmoothRamp ramp;

  /// Instantaneous longitudinal field g(t) = g0 * ramp(t/tau), rad/s.
  double g(double t) const { return g0 * ramp.eval(t / tau); }

  /// dg/dt (rad/s^2).
  double g_dot(double t) const { return g0 * ramp.eval(t / tau, 1) / tau; }
};

/// Two-component state vector.
struct QubitState {
  std::array<std::complex<double>, 2> amplitudes{};

  double norm() const noexcept {
    return std::sqrt(std::norm(amplitudes[0]) + std::norm(amplitudes[1]));
  }
};

/// Normalized ground state of Delta sigma_x + g sigma_z, by analytic 2x2
/// diagonalization (real amplitudes; no eigensolver noise).
QubitState ground_state(double delta, double g);

/// |<a|b>|^2.
double fidelity(const QubitState& a, const QubitState& b);

/// Counterdiabatic field g_cd(t), rad/s.
double cd_field(const LzConfig& cfg, double t);

/// Entropy functionals (cost units with the chi hbar^2 / mu^2 prefactor
/// stripped; feed field_profiles into circuit::protocol_entropy for the
/// dimensionful values).
double zeta_z(const LzConfig& cfg);
double zeta_cd(const LzConfig& cfg);

/// Same functionals for an arbitrary C^1 profile G(s), G'(s) on s in [0,1]
/// (used for bound-saturation studies with non-polynomial schedules).
double zeta_z_profile(const std::function<double(double)>& G, double tau);
double zeta_cd_profile(const std::function<double(double)>& G,
                       const std::function<double(double)>& G_slope, double delta, double tau);

/// Bures angle between the ground states at g = -g0 and g = +g0:
/// arctan(g0/delta), in (0, pi/2).
double bures_lz(double g0, double delta);

/// Lower bound bures^2 / tau for zeta_cd, saturated by the constant-speed
/// (arctan) schedule.
double cd_lower_bound(const LzConfig& cfg);

/// With zeta_z = a tau and zeta_cd = b / tau, the total is minimized at
/// tau_min = sqrt(b/a) with value zeta_min = 2 sqrt(a b); both are
/// independent of the tau stored in cfg.
struct OptimalTime {
  double tau_min = 0.0;   ///< s
  double zeta_min = 0.0;
};
OptimalTime optimal_time(const LzConfig& cfg);

/// Integrate the Schrodinger equation from the initial ground state across
/// the sweep (RK4, fixed steps) and report the final state plus its overlap
/// with the target ground state.
struct EvolveResult {
  QubitState final;
  double fidelity = 0.0;
};
EvolveResult evolve(const LzConfig& cfg, bool with_cd, std::size_t steps);

/// The two coil field profiles in tesla: Bz(t) = hbar g(t) / mu and
/// By(t) = -hbar g_cd(t) / mu.  (The CD term enters the Hamiltonian as
/// -hbar g_cd sigma_y = mu By sigma_y; the sign never matters for entropy,
/// which is quadratic in the field.)
struct FieldProfiles {
  std::function<double(double)> bz;
  std::function<double(double)> by;
};
FieldProfiles field_profiles(const LzConfig& cfg);

/// Decomposed entropy summary for one configuration.
struct EntropyBreakdown {
  double zeta_z = 0.0;
  double zeta_cd = 0.0;
  double zeta_total = 0.0;  ///< zeta_z + zeta_cd
  double tau_min = 0.0;     ///< s
  double zeta_min = 0.0;    ///< 2 sqrt(zeta_z * zeta_cd), tau-independent
  double bures = 0.0;       ///< rad
  double cd_bound = 0.0;    ///< bures^2 / tau; zeta_cd >= cd_bound
};
EntropyBreakdown entropy_breakdown(const LzConfig& cfg);

}  // namespace qcost::landau_zener
