#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qcost/constants.hpp"
#include "qcost/circuit.hpp"
#include "qcost/landau_zener.hpp"
#include "qcost/numerics.hpp"

using namespace qcost;
namespace lz = qcost::landau_zener;

namespace {

// Work in the Delta = 1 convention (frequencies in units of Delta, times in
// units of 1/Delta); mu only matters for the SI field profiles.
lz::LzConfig make_config(double g0, double tau) {
  return lz::LzConfig{1.0, g0, tau, bohr_magneton};
}

// Frozen tau-free sweep coefficients a = zeta_z/tau, b = zeta_cd*tau for the
// quintic ramp at Delta = 1 (regression pins; derived independently below).
constexpr double kA02 = 0.022683982684;   // g0 = 0.2
constexpr double kB02 = 0.056078773751;
constexpr double kB05 = 0.320844487665;   // g0 = 0.5
constexpr double kB10 = 1.022278253084;   // g0 = 1.0

// A smooth ramp family for property tests: the quintic plus a random bump
// that vanishes (with its slope) at both endpoints, so every member drives
// the same pair of boundary states.
struct RandomRamp {
  oracle::Poly poly;
  oracle::Poly slope;

  double value(double s) const { return static_cast<double>(oracle::poly_eval(poly, s)); }
  double deriv(double s) const { return static_cast<double>(oracle::poly_eval(slope, s)); }
};

RandomRamp random_ramp(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> coeff(-1.5, 1.5);
  const oracle::Poly envelope = {0.0L, 0.0L, 1.0L, -2.0L, 1.0L};  // s^2 (1-s)^2
  const oracle::Poly bump = {coeff(gen), coeff(gen), coeff(gen), coeff(gen)};
  oracle::Poly poly = oracle::poly_mul(envelope, bump);
  const oracle::Poly quintic = {-1.0L, 0.0L, 0.0L, 20.0L, -30.0L, 12.0L};
  poly.resize(std::max(poly.size(), quintic.size()), 0.0L);
  for (std::size_t i = 0; i < quintic.size(); ++i) poly[i] += quintic[i];
  return {poly, oracle::poly_derivative(poly)};
}

}  // namespace

TEST_CASE("LzConfig validates its parameters") {
  CHECK_THROWS_AS(lz::LzConfig(0.0, 0.2, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(lz::LzConfig(1.0, 0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(lz::LzConfig(1.0, 0.2, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(lz::LzConfig(1.0, 0.2, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("ground_state is a normalized eigenvector in both sign branches") {
  const double delta = 1.0;
  for (const double g : {-3.0, -0.5, 0.0, 0.4, 2.0}) {
    CAPTURE(g);
    const auto state = lz::ground_state(delta, g);
    CHECK(state.norm() == doctest::Approx(1.0).epsilon(1e-14));

    // H/hbar = [[g, delta], [delta, -g]] must map the state to -E times it.
    const double energy = std::hypot(delta, g);
    const auto h0 = g * state.amplitudes[0] + delta * state.amplitudes[1];
    const auto h1 = delta * state.amplitudes[0] - g * state.amplitudes[1];
    CHECK(std::abs(h0 - (-energy) * state.amplitudes[0]) <= 1e-13);
    CHECK(std::abs(h1 - (-energy) * state.amplitudes[1]) <= 1e-13);
  }

  // The two analytic branches agree (same global sign) across g = 0.
  const auto below = lz::ground_state(delta, -1e-12);
  const auto above = lz::ground_state(delta, 1e-12);
  CHECK(std::abs(below.amplitudes[0] - above.amplitudes[0]) <= 1e-10);
  CHECK(std::abs(below.amplitudes[1] - above.amplitudes[1]) <= 1e-10);
}

TEST_CASE("fidelity is an overlap probability, insensitive to global phase") {
  const auto a = lz::ground_state(1.0, 0.3);
  CHECK(lz::fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-14));

  lz::QubitState rotated = a;
  const std::complex<double> phase = std::polar(1.0, 1.234);
  rotated.amplitudes[0] *= phase;
  rotated.amplitudes[1] *= phase;
  CHECK(lz::fidelity(a, rotated) == doctest::Approx(1.0).epsilon(1e-13));

  // Ground and "flipped" state at symmetric sweep values are not aligned.
  const auto b = lz::ground_state(1.0, -0.3);
  CHECK(lz::fidelity(a, b) < 1.0);
}

TEST_CASE("cd_field peaks at the sweep midpoint with the quintic slope") {
  const auto cfg = make_config(0.2, 1.0);
  // At t = tau/2 the sweep crosses zero with slope g0 * 15/4, so the
  // counterdiabatic field is g0 * 15 / (8 Delta tau).
  CHECK(lz::cd_field(cfg, 0.5) == doctest::Approx(0.375).epsilon(1e-13));
  CHECK(lz::cd_field(cfg, 0.0) == 0.0);   // flat ramp ends
  CHECK(std::abs(lz::cd_field(cfg, 1.0)) <= 1e-13);
}

// ===========================================================================
// Cost integrals
// ===========================================================================

TEST_CASE("zeta_z equals the exact quintic moment 131/231 at unit scale") {
  const auto cfg = make_config(1.0, 1.0);
  CHECK(oracle::rel_err(lz::zeta_z(cfg), 131.0 / 231.0) <= 1e-12);

  // Exact closed-form scaling in amplitude and duration.
  const auto scaled = make_config(0.2, 3.7);
  CHECK(oracle::rel_err(lz::zeta_z(scaled), 3.7 * 0.04 * 131.0 / 231.0) <= 1e-12);
}

TEST_CASE("zeta_cd matches an independent Gauss-Legendre evaluation") {
  for (const double g0 : {0.2, 0.5, 1.0}) {
    CAPTURE(g0);
    const auto cfg = make_config(g0, 1.0);
    const auto integrand = [&cfg](double s) {
      const double G = cfg.g0 * cfg.ramp.eval(s);
      const double slope = cfg.g0 * cfg.ramp.eval(s, 1);
      const double denom = 1.0 + G * G;
      return slope * slope / (4.0 * denom * denom);
    };
    const double want = oracle::gauss_legendre(integrand, 0.0, 1.0, 128);
    CHECK(oracle::rel_err(lz::zeta_cd(cfg), want) <= 1e-12);
  }
}

TEST_CASE("zeta coefficients match their frozen regression values") {
  CHECK(oracle::rel_err(lz::zeta_z(make_config(0.2, 1.0)), kA02) <= 1e-9);
  CHECK(oracle::rel_err(lz::zeta_cd(make_config(0.2, 1.0)), kB02) <= 1e-9);
  CHECK(oracle::rel_err(lz::zeta_cd(make_config(0.5, 1.0)), kB05) <= 1e-9);
  CHECK(oracle::rel_err(lz::zeta_cd(make_config(1.0, 1.0)), kB10) <= 1e-9);
}

TEST_CASE("zeta_z grows and zeta_cd shrinks with duration, exactly inversely") {
  const double tau = 4.25;
  const auto unit = make_config(0.5, 1.0);
  const auto slow = make_config(0.5, tau);
  CHECK(lz::zeta_z(slow) == tau * lz::zeta_z(unit));
  CHECK(lz::zeta_cd(slow) == lz::zeta_cd(unit) / tau);
}

TEST_CASE("bures_lz and the counterdiabatic lower bound") {
  CHECK(lz::bures_lz(0.2, 1.0) == doctest::Approx(0.19739555984988078).epsilon(1e-14));
  CHECK(lz::bures_lz(1.0, 1.0) == doctest::Approx(std::atan(1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(lz::bures_lz(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(lz::bures_lz(0.2, 0.0), std::invalid_argument);

  const auto cfg = make_config(0.2, 2.0);
  const double bures = lz::bures_lz(0.2, 1.0);
  CHECK(lz::cd_lower_bound(cfg) == doctest::Approx(bures * bures / 2.0).epsilon(1e-14));
}

TEST_CASE("every admissible ramp pays at least the geometric cost") {
  std::mt19937_64 gen(42);
  for (const double g0 : {0.2, 0.5, 1.0}) {
    const double bures = lz::bures_lz(g0, 1.0);
    const double floor = bures * bures;
    for (int trial = 0; trial < 50; ++trial) {
      const RandomRamp ramp = random_ramp(gen);
      const double tau = 1.0;
      const double cost = lz::zeta_cd_profile(
          [&](double s) { return g0 * ramp.value(s); },
          [&](double s) { return g0 * ramp.deriv(s); }, 1.0, tau);
      CHECK(cost * tau >= floor * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("the tangent sweep saturates the geometric cost bound") {
  for (const double g0 : {0.2, 1.0}) {
    const double bures = lz::bures_lz(g0, 1.0);
    // G(s) = Delta tan(L (2s - 1)) makes the integrand exactly constant L^2.
    const auto G = [bures](double s) { return std::tan(bures * (2.0 * s - 1.0)); };
    const auto G_slope = [bures](double s) {
      const double c = std::cos(bures * (2.0 * s - 1.0));
      return 2.0 * bures / (c * c);
    };
    const double cost = lz::zeta_cd_profile(G, G_slope, 1.0, 1.0);
    CHECK(oracle::rel_err(cost, bures * bures) <= 1e-12);
  }
}

TEST_CASE("optimal_time matches the closed form and an independent minimizer") {
  const auto cfg = make_config(0.2, 1.0);
  const auto opt = lz::optimal_time(cfg);
  CHECK(oracle::rel_err(opt.tau_min, std::sqrt(kB02 / kA02)) <= 1e-9);
  CHECK(oracle::rel_err(opt.zeta_min, 2.0 * std::sqrt(kA02 * kB02)) <= 1e-9);

  // Frozen decimals for the default operating point.
  CHECK(opt.tau_min == doctest::Approx(1.572315156).epsilon(1e-8));
  CHECK(opt.zeta_min == doctest::Approx(0.071332740).epsilon(1e-7));

  // Independent route: scan-and-refine the actual total cost over tau.
  const auto total = [&](double tau) {
    const auto scaled = make_config(0.2, tau);
    return lz::zeta_z(scaled) + lz::zeta_cd(scaled);
  };
  const auto by_search = numerics::minimize_scalar(total, 0.1, 20.0, 1e-9);
  CHECK(oracle::rel_err(by_search.argmin, opt.tau_min) <= 1e-6);
  CHECK(oracle::rel_err(by_search.min_value, opt.zeta_min) <= 1e-9);

  // Away from the optimum the total cost diverges in both directions.
  CHECK(total(opt.tau_min * 100.0) > 10.0 * opt.zeta_min);
  CHECK(total(opt.tau_min / 100.0) > 10.0 * opt.zeta_min);
}

// ===========================================================================
// State evolution
// ===========================================================================

TEST_CASE("evolve with the counterdiabatic term tracks the ground state") {
  for (const double g0 : {0.2, 1.0}) {
    for (const double tau : {0.5, 5.0}) {
      CAPTURE(g0);
      CAPTURE(tau);
      const auto result = lz::evolve(make_config(g0, tau), true, 4000);
      CHECK(result.fidelity >= 1.0 - 1e-6);
      CHECK(std::abs(result.final.norm() - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("evolve without assistance interpolates sudden to adiabatic") {
  // Sudden limit: the state has no time to move, so the fidelity is the
  // frozen overlap |<gs(+g0)|gs(-g0)>|^2 = cos^2(L) with the endpoint
  // ground states separated by Bures angle L.
  const double g0 = 1.0;
  const auto sudden = lz::evolve(make_config(g0, 1e-4), false, 2000);
  const double frozen_overlap =
      lz::fidelity(lz::ground_state(1.0, g0), lz::ground_state(1.0, -g0));
  CHECK(std::abs(sudden.fidelity - frozen_overlap) <= 1e-3);

  // Adiabatic limit.
  const auto slow = lz::evolve(make_config(0.5, 200.0), false, 40000);
  CHECK(slow.fidelity >= 0.999);

  // Intermediate speeds land strictly between the limits.
  const auto mid = lz::evolve(make_config(0.5, 2.0), false, 4000);
  CHECK(mid.fidelity < 0.99999);
  CHECK(mid.fidelity > frozen_overlap);
}

// ===========================================================================
// Physical field profiles
// ===========================================================================

TEST_CASE("field_profiles expose the SI sweep and assist fields") {
  const double mu = bohr_magneton;
  lz::FieldProfiles profiles = [] {
    const auto local = make_config(0.2, 1.0);
    return lz::field_profiles(local);  // must survive the config's scope
  }();

  CHECK(profiles.bz(0.0) == doctest::Approx(-hbar * 0.2 / mu).epsilon(1e-13));
  CHECK(profiles.bz(1.0) == doctest::Approx(hbar * 0.2 / mu).epsilon(1e-12));
  // The assist field opposes the configured rotation sense at mid-sweep.
  CHECK(profiles.by(0.5) == doctest::Approx(-hbar * 0.375 / mu).epsilon(1e-12));
}

TEST_CASE("integrated field entropy reproduces the dimensionless costs") {
  const circuit::CircuitParams coil{0.5, 2e-3, 77.0, 5e-4};
  const auto cfg = make_config(0.5, 1.3);
  const auto profiles = lz::field_profiles(cfg);
  const double si_scale = hbar * hbar * coil.chi() / (cfg.mu * cfg.mu);

  const double sz = circuit::protocol_entropy(profiles.bz, coil, cfg.tau);
  CHECK(oracle::rel_err(sz / si_scale, lz::zeta_z(cfg)) <= 1e-8);

  const double sy = circuit::protocol_entropy(profiles.by, coil, cfg.tau);
  CHECK(oracle::rel_err(sy / si_scale, lz::zeta_cd(cfg)) <= 1e-8);
}

TEST_CASE("entropy_breakdown is internally consistent") {
  const auto cfg = make_config(0.2, 2.5);
  const auto breakdown = lz::entropy_breakdown(cfg);
  CHECK(breakdown.zeta_z == lz::zeta_z(cfg));
  CHECK(breakdown.zeta_cd == lz::zeta_cd(cfg));
  CHECK(breakdown.zeta_total == breakdown.zeta_z + breakdown.zeta_cd);
  CHECK(breakdown.bures == lz::bures_lz(0.2, 1.0));
  CHECK(breakdown.cd_bound == doctest::Approx(breakdown.bures * breakdown.bures / 2.5)
                                  .epsilon(1e-14));
  CHECK(breakdown.zeta_cd >= breakdown.cd_bound);
  const auto opt = lz::optimal_time(cfg);
  CHECK(breakdown.tau_min == opt.tau_min);
  CHECK(breakdown.zeta_min == opt.zeta_min);
  // The optimum is duration-free and never beats the achieved total.
  CHECK(breakdown.zeta_total >= breakdown.zeta_min * (1.0 - 1e-12));
}
