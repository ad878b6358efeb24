#include "qcost/landau_zener.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qcost/constants.hpp"
#include "qcost/numerics.hpp"

namespace qcost::landau_zener {

namespace {

// Tight tolerance for the dimensionless s-integrals; they are smooth and
// cheap, and the exact-value contracts sit at 1e-12.
constexpr double kZetaTol = 1e-13;

}  // namespace

LzConfig::LzConfig(double delta_, double g0_, double tau_, double mu_,
                   protocols::SmoothRamp ramp_)
    : delta(delta_), g0(g0_), tau(tau_), mu(mu_), ramp(std::move(ramp_)) {
  if (!(delta > 0.0)) throw std::invalid_argument("LzConfig: delta must be positive");
  if (!(g0 > 0.0)) throw std::invalid_argument("LzConfig: g0 must be positive");
  if (!(tau > 0.0)) throw std::invalid_argument("LzConfig: tau must be positive");
  if (!(mu > 0.0)) throw std::invalid_argument("LzConfig: mu must be positive");
}

QubitState ground_state(double delta, double g) {
  const double energy = std::hypot(delta, g);
  QubitState state;
  // Analytic eigenvector of [[g, delta], [delta, -g]] for eigenvalue
  // -energy, in the branch that stays well-conditioned for either sign of g.
  if (g > 0.0) {
    const double norm = std::hypot(delta, g + energy);
    state.amplitudes = {delta / norm, -(g + energy) / norm};
  } else {
    const double norm = std::hypot(energy - g, delta);
    state.amplitudes = {(energy - g) / norm, -delta / norm};
  }
  return state;
}

double fidelity(const QubitState& a, const QubitState& b) {
  const std::complex<double> overlap = std::conj(a.amplitudes[0]) * b.amplitudes[0] +
                                       std::conj(a.amplitudes[1]) * b.amplitudes[1];
  return std::norm(overlap);
}

double cd_field(const LzConfig& cfg, double t) {
  const double g = cfg.g(t);
  return cfg.delta * cfg.g_dot(t) / (2.0 * (cfg.delta * cfg.delta + g * g));
}

double zeta_z_profile(const std::function<double(double)>& G, double tau) {
  const auto quad = numerics::integrate(
      [&G](double s) {
        const double g = G(s);
        return g * g;
      },
      0.0, 1.0, kZetaTol);
  return tau * quad.value;
}

double zeta_cd_profile(const std::function<double(double)>& G,
                       const std::function<double(double)>& G_slope, double delta, double tau) {
  const double d2 = delta * delta;
  const auto quad = numerics::integrate(
      [&, d2](double s) {
        const double g = G(s);
        const double slope = G_slope(s);
        const double denom = d2 + g * g;
        return d2 * slope * slope / (4.0 * denom * denom);
      },
      0.0, 1.0, kZetaTol);
  return quad.value / tau;
}

double zeta_z(const LzConfig& cfg) {
  return zeta_z_profile([&cfg](double s) { return cfg.g0 * cfg.ramp.eval(s); }, cfg.tau);
}

double zeta_cd(const LzConfig& cfg) {
  return zeta_cd_profile([&cfg](double s) { return cfg.g0 * cfg.ramp.eval(s); },
                         [&cfg](double s) { return cfg.g0 * cfg.ramp.eval(s, 1); }, cfg.delta,
                         cfg.tau);
}

double bures_lz(double g0, double delta) {
  if (!(g0 > 0.0) || !(delta > 0.0)) {
    throw std::invalid_argument("bures_lz: g0 and delta must be positive");
  }
  return std::atan(g0 / delta);
}

double cd_lower_bound(const LzConfig& cfg) {
  const double bures = bures_lz(cfg.g0, cfg.delta);
  return bures * bures / cfg.tau;
}

OptimalTime optimal_time(const LzConfig& cfg) {
  // zeta_z = a tau, zeta_cd = b / tau: recover the tau-free coefficients.
  const double a = zeta_z(cfg) / cfg.tau;
  const double b = zeta_cd(cfg) * cfg.tau;
  return {std::sqrt(b / a), 2.0 * std::sqrt(a * b)};
}

EvolveResult evolve(const LzConfig& cfg, bool with_cd, std::size_t steps) {
  // Work in scaled time s = t/tau: dpsi/ds = -i tau H(s)/hbar psi with
  // H/hbar = Delta sigma_x + G(s) sigma_z - g_cd sigma_y.  Conveniently
  // tau * g_cd = Delta G'(s) / (2 (Delta^2 + G^2)) is tau-free.
  const double theta_x = cfg.tau * cfg.delta;
  const auto rhs = [&cfg, with_cd, theta_x](double s, const std::vector<double>& y,
                                            std::vector<double>& dydt) {
    const double G = cfg.g0 * cfg.ramp.eval(s);
    const double theta_z = cfg.tau * G;
    double theta_y = 0.0;
    if (with_cd) {
      const double slope = cfg.g0 * cfg.ramp.eval(s, 1);
      theta_y = cfg.delta * slope / (2.0 * (cfg.delta * cfg.delta + G * G));
    }
    const double ur = y[0], ui = y[1], vr = y[2], vi = y[3];
    dydt[0] = theta_z * ui + theta_x * vi + theta_y * vr;
    dydt[1] = -theta_z * ur - theta_x * vr + theta_y * vi;
    dydt[2] = theta_x * ui - theta_y * ur - theta_z * vi;
    dydt[3] = -theta_x * ur - theta_y * ui + theta_z * vr;
  };

  const QubitState initial = ground_state(cfg.delta, cfg.g0 * cfg.ramp.eval(0.0));
  const std::vector<double> y0 = {initial.amplitudes[0].real(), initial.amplitudes[0].imag(),
                                  initial.amplitudes[1].real(), initial.amplitudes[1].imag()};
  const auto end = numerics::ode_evolve(rhs, 0.0, y0, 1.0, steps);

  EvolveResult result;
  result.final.amplitudes = {std::complex<double>(end.y[0], end.y[1]),
                             std::complex<double>(end.y[2], end.y[3])};
  const QubitState target = ground_state(cfg.delta, cfg.g0 * cfg.ramp.eval(1.0));
  result.fidelity = fidelity(target, result.final);
  return result;
}

FieldProfiles field_profiles(const LzConfig& cfg) {
  // Capture by value: the profiles must outlive the caller's config.
  FieldProfiles profiles;
  profiles.bz = [cfg](double t) { return hbar * cfg.g(t) / cfg.mu; };
  profiles.by = [cfg](double t) { return -hbar * cd_field(cfg, t) / cfg.mu; };
  return profiles;
}

EntropyBreakdown entropy_breakdown(const LzConfig& cfg) {
  EntropyBreakdown out;
  out.zeta_z = zeta_z(cfg);
  out.zeta_cd = zeta_cd(cfg);
  out.zeta_total = out.zeta_z + out.zeta_cd;
  const auto opt = optimal_time(cfg);
  out.tau_min = opt.tau_min;
  out.zeta_min = opt.zeta_min;
  out.bures = bures_lz(cfg.g0, cfg.delta);
  out.cd_bound = cd_lower_bound(cfg);
  return out;
}

}  // namespace qcost::landau_zener
