#include "qcost/penning.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qcost/constants.hpp"
#include "qcost/errors.hpp"
#include "qcost/numerics.hpp"

namespace qcost::penning {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kZetaTol = 1e-13;

// nu^2 / (2 - nu^2), the static-confinement weight.
double nu_weight(double nu) { return nu * nu / (2.0 - nu * nu); }

}  // namespace

PenningConfig::PenningConfig(double c_, double eta_, double nu_, double l0_, double m_, double q_)
    : c(c_), eta(eta_), nu(nu_), l0(l0_), m(m_), q(q_), lambda(protocols::penning_lambda(c_)) {
  if (!(c > 0.0)) throw std::invalid_argument("PenningConfig: c must be positive");
  if (!(eta > 0.0)) throw std::invalid_argument("PenningConfig: eta must be positive");
  if (!(nu > 0.0 && nu < kSqrt2)) {
    throw std::invalid_argument("PenningConfig: nu must satisfy 0 < nu < sqrt(2)");
  }
  if (!(l0 > 0.0)) throw std::invalid_argument("PenningConfig: l0 must be positive");
  if (!(m > 0.0)) throw std::invalid_argument("PenningConfig: m must be positive");
  if (!(q > 0.0)) throw std::invalid_argument("PenningConfig: q must be positive");
}

PenningConfig::PenningConfig(double c_, double eta_, double nu_)
    : PenningConfig(c_, eta_, nu_, default_radial_length(beryllium9_ion_mass),
                    beryllium9_ion_mass, elementary_charge) {}

double PenningConfig::default_radial_length(double mass, double radial_frequency_hz) {
  const double omega = 2.0 * 3.14159265358979323846 * radial_frequency_hz;
  return std::sqrt(hbar / (2.0 * mass * omega));
}

double radial_frequency0(const PenningConfig& cfg) {
  return hbar / (2.0 * cfg.m * cfg.l0 * cfg.l0);
}

double duration(const PenningConfig& cfg) { return cfg.eta / radial_frequency0(cfg); }

double bz_profile(const PenningConfig& cfg, double s) {
  const double lam = cfg.lambda.eval(s);
  const double lam_dd = cfg.lambda.eval(s, 2);
  const double radicand =
      1.0 - lam * lam * lam * lam_dd / (cfg.eta * cfg.eta) + nu_weight(cfg.nu) * std::pow(lam, 4);
  if (radicand < 0.0) {
    std::ostringstream msg;
    msg << "bz_profile: field not realizable at s = " << s << " for eta = " << cfg.eta
        << " (radicand " << radicand << ")";
    throw ConstraintError(msg.str(), s);
  }
  const double scale = hbar / (cfg.q * cfg.l0 * cfg.l0);
  return scale * std::sqrt(radicand) / (lam * lam);
}

double radial_frequency(const PenningConfig& cfg, double s) {
  const double omega = cfg.q * bz_profile(cfg, s) / (2.0 * cfg.m);
  const double omega0 = cfg.q * bz_profile(cfg, 0.0) / (2.0 * cfg.m);
  const double omega_z = cfg.nu * omega0;
  return std::sqrt(omega * omega - 0.5 * omega_z * omega_z);
}

double min_eta(double c, double nu, std::size_t grid) {
  if (grid < 1000) throw std::invalid_argument("min_eta: grid must be >= 1000");
  if (!(c > 0.0)) throw std::invalid_argument("min_eta: c must be positive");
  if (!(nu > 0.0 && nu < kSqrt2)) {
    throw std::invalid_argument("min_eta: nu must satisfy 0 < nu < sqrt(2)");
  }
  const auto ramp = protocols::penning_lambda(c);
  const double weight = nu_weight(nu);

  // eta^2 must dominate lambda^3 lambda'' / (1 + weight lambda^4) wherever
  // that expression is positive.
  const auto constraint = [&](double s) {
    const double lam = ramp.eval(s);
    const double lam_dd = ramp.eval(s, 2);
    return lam * lam * lam * lam_dd / (1.0 + weight * std::pow(lam, 4));
  };

  double best = 0.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i <= grid; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(grid);
    const double v = constraint(s);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  if (best <= 0.0) return 0.0;  // lambda''  <= 0 everywhere that matters (e.g. c = 1)

  // Refine the grid maximum with golden section in the bracketing cell pair.
  const double ds = 1.0 / static_cast<double>(grid);
  const double lo = std::max(0.0, static_cast<double>(best_i) * ds - ds);
  const double hi = std::min(1.0, static_cast<double>(best_i) * ds + ds);
  const auto refined =
      numerics::minimize_scalar([&](double s) { return -constraint(s); }, lo, hi, 1e-13, 9);
  best = std::max(best, -refined.min_value);
  return std::sqrt(best);
}

double zeta_d(const PenningConfig& cfg) {
  const auto quad = numerics::integrate(
      [&cfg](double s) {
        const double lam = cfg.lambda.eval(s);
        const double lam_dd = cfg.lambda.eval(s, 2);
        return cfg.eta / std::pow(lam, 4) - lam_dd / (lam * cfg.eta);
      },
      0.0, 1.0, kZetaTol);
  return quad.value;
}

std::pair<double, double> zeta_d_terms(const PenningConfig& cfg) {
  const auto first = numerics::integrate(
      [&cfg](double s) { return 1.0 / std::pow(cfg.lambda.eval(s), 4); }, 0.0, 1.0, kZetaTol);
  const auto second = numerics::integrate(
      [&cfg](double s) { return cfg.lambda.eval(s, 2) / cfg.lambda.eval(s); }, 0.0, 1.0,
      kZetaTol);
  return {cfg.eta * first.value, -second.value / cfg.eta};
}

double bures_penning(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("bures_penning: c must be positive");
  // 2 sqrt(c)/(1+c) <= 1 by AM-GM; the clamp only absorbs rounding at c ~ 1.
  return std::acos(std::min(1.0, 2.0 * std::sqrt(c) / (1.0 + c)));
}

double ratio_for_bures(double bures, bool compression) {
  if (!(bures >= 0.0 && bures < 1.5707963267948966)) {
    throw std::invalid_argument("ratio_for_bures: bures must lie in [0, pi/2)");
  }
  // Solve cos(bures) = 2 sqrt(c)/(1+c): sqrt(c) = (1 +/- sin)/cos, the two
  // roots being reciprocal.
  const double root = (1.0 + std::sin(bures)) / std::cos(bures);
  const double c = root * root;
  return compression ? c : 1.0 / c;
}

double zeta_bounds(const PenningConfig& cfg) {
  const double alpha = 1.0 - 1.0 / std::sqrt(cfg.c);
  const double lam_dd_max = 84.0 * std::abs(alpha) / (5.0 * std::sqrt(5.0));
  if (cfg.c < 1.0) {  // expansion: lambda in [1, 1/sqrt(c)]
    return std::max(0.0, cfg.c * cfg.c * cfg.eta - lam_dd_max / cfg.eta);
  }
  // compression: lambda in [1/sqrt(c), 1]
  return std::max(0.0, cfg.eta - lam_dd_max * std::sqrt(cfg.c) / cfg.eta);
}

double ermakov_residual(const PenningConfig& cfg, double s) {
  const double lam = cfg.lambda.eval(s);
  const double lam_dd = cfg.lambda.eval(s, 2);
  const double w = radial_frequency(cfg, s) * duration(cfg);
  return lam_dd + w * w * lam - std::pow(cfg.eta, 2) / std::pow(lam, 3);
}

PenningEntropy entropy_report(const PenningConfig& cfg, const circuit::CircuitParams& p) {
  PenningEntropy report;
  report.zeta_d = zeta_d(cfg);
  report.static_term = cfg.eta * nu_weight(cfg.nu);
  // Sigma = chi Int_0^tau B^2 dt with B = (hbar/q l0^2) f(s), tau = eta /
  // omega_r(0) = 2 m l0^2 eta / hbar collapses to the closed form below;
  // the prefactor carries J/K.
  report.si_prefactor = 2.0 * cfg.m * hbar * p.chi() / (cfg.q * cfg.q * cfg.l0 * cfg.l0);
  report.sigma_total = report.si_prefactor * (report.zeta_d + report.static_term);
  report.bures = bures_penning(cfg.c);
  report.lower_bound = zeta_bounds(cfg);
  return report;
}

}  // namespace qcost::penning
