#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qcost/errors.hpp"
#include "qcost/numerics.hpp"

using namespace qcost;
using numerics::NormalStream;

// ===========================================================================
// Quadrature
// ===========================================================================

TEST_CASE("integrate reproduces exact polynomial integrals") {
  // Degrees 0..10 with awkward coefficients; truth from exact coefficient
  // arithmetic in long double.
  const oracle::Poly poly = {0.5L, -3.0L, 2.25L, 7.0L, -1.0L, 0.125L,
                             -9.5L, 4.0L, 0.75L, -2.0L, 1.5L};
  for (std::size_t degree = 0; degree <= 10; ++degree) {
    oracle::Poly truncated(poly.begin(), poly.begin() + degree + 1);
    const auto f = [&truncated](double x) {
      return static_cast<double>(oracle::poly_eval(truncated, x));
    };
    const double want = static_cast<double>(oracle::poly_integral(truncated, -1.0L, 2.0L));
    const auto result = numerics::integrate(f, -1.0, 2.0);
    CHECK(oracle::rel_err(result.value, want) <= 1e-12);
    CHECK(result.evaluations >= 5);
  }
}

TEST_CASE("integrate agrees with Gauss-Legendre on smooth transcendentals") {
  const auto f = [](double x) { return std::exp(-x) * std::sin(3.0 * x); };
  const double want = oracle::gauss_legendre(f, 0.0, 4.0);
  const auto result = numerics::integrate(f, 0.0, 4.0);
  CHECK(oracle::rel_err(result.value, want) <= 1e-12);

  // Orientation: swapping the limits flips the sign exactly.
  const auto reversed = numerics::integrate(f, 4.0, 0.0);
  CHECK(reversed.value == -result.value);
}

TEST_CASE("integrate handles zero-length and near-zero integrals") {
  const auto f = [](double x) { return std::sin(x); };
  const auto empty = numerics::integrate(f, 1.0, 1.0);
  CHECK(empty.value == 0.0);
  CHECK(empty.evaluations == 0);

  // Odd integrand on a symmetric interval: exact value 0; the absolute
  // floor keeps the subdivision from chasing relative accuracy forever.
  const auto odd = numerics::integrate(f, -2.0, 2.0);
  CHECK(std::abs(odd.value) <= 1e-13);
}

TEST_CASE("integrate reports nonconvergence with a usable partial result") {
  const auto f = [](double x) { return std::sin(50.0 * x); };
  CHECK_THROWS_AS(numerics::integrate(f, 0.0, 3.0, 1e-12, 2), QuadratureError);
  try {
    numerics::integrate(f, 0.0, 3.0, 1e-12, 2);
  } catch (const QuadratureError& e) {
    CHECK(std::isfinite(e.partial_value()));
    CHECK(e.error_estimate() > 0.0);
    CHECK(e.evaluations() > 0);
  }
}

TEST_CASE("integrate validates its tolerances") {
  const auto f = [](double x) { return x; };
  CHECK_THROWS_AS(numerics::integrate(f, 0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(numerics::integrate(f, 0.0, 1.0, 1e-10, 0), std::invalid_argument);
}

// ===========================================================================
// RK4
// ===========================================================================

TEST_CASE("ode_evolve integrates cubic-in-time rhs exactly") {
  // For y' = f(t), one RK4 step is Simpson's rule: exact through cubics.
  const numerics::OdeRhs rhs = [](double t, const std::vector<double>&, std::vector<double>& d) {
    d[0] = 3.0 * t * t;
  };
  const auto out = numerics::ode_evolve(rhs, 0.0, {0.0}, 2.0, 4);
  CHECK(out.y[0] == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(out.t == 2.0);
}

TEST_CASE("ode_evolve shows fourth-order convergence") {
  // y' = -y + sin(2t), y(0) = 1; closed form via integrating factor.
  const numerics::OdeRhs rhs = [](double t, const std::vector<double>& y,
                                  std::vector<double>& d) { d[0] = -y[0] + std::sin(2.0 * t); };
  const auto exact = [](double t) {
    return 1.4 * std::exp(-t) + (std::sin(2.0 * t) - 2.0 * std::cos(2.0 * t)) / 5.0;
  };
  const double err_coarse = std::abs(numerics::ode_evolve(rhs, 0.0, {1.0}, 2.0, 40).y[0] -
                                     exact(2.0));
  const double err_fine = std::abs(numerics::ode_evolve(rhs, 0.0, {1.0}, 2.0, 80).y[0] -
                                   exact(2.0));
  const double ratio = err_coarse / err_fine;
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("ode_evolve reports the blow-up time of a singular solution") {
  // y' = y^2 with y(0) = 1 diverges at t = 1.
  const numerics::OdeRhs rhs = [](double, const std::vector<double>& y, std::vector<double>& d) {
    d[0] = y[0] * y[0];
  };
  CHECK_THROWS_AS(numerics::ode_evolve(rhs, 0.0, {1.0}, 2.0, 2000), OdeError);
  try {
    numerics::ode_evolve(rhs, 0.0, {1.0}, 2.0, 2000);
  } catch (const OdeError& e) {
    CHECK(e.time() > 0.9);
    CHECK(e.time() <= 2.0);
  }
}

TEST_CASE("ode_evolve validates inputs") {
  const numerics::OdeRhs rhs = [](double, const std::vector<double>&, std::vector<double>& d) {
    d[0] = 0.0;
  };
  CHECK_THROWS_AS(numerics::ode_evolve(rhs, 0.0, {1.0}, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(numerics::ode_evolve(rhs, 0.0, {}, 1.0, 10), std::invalid_argument);
}

// ===========================================================================
// SDE ensembles
// ===========================================================================

TEST_CASE("sde_ensemble with zero noise matches a hand-rolled Euler skeleton") {
  const numerics::SdeDrift drift = [](double t, double y) { return std::sin(t) - 0.5 * y; };
  const double dt = 0.005;
  const double t1 = 2.0;
  const auto trace = numerics::sde_ensemble(
      drift, 0.0, [](NormalStream&) { return 0.75; }, t1, dt, 4, 99);

  double y = 0.75;
  const auto steps = static_cast<std::size_t>(std::llround(t1 / dt));
  for (std::size_t k = 0; k < steps; ++k) {
    y += drift(static_cast<double>(k) * dt, y) * dt;
  }
  CHECK(std::abs(trace.mean.back() - y) <= 1e-9 * std::abs(y));

  // Identical deterministic trajectories: the spread must be exactly zero
  // at every sample, not merely small.
  for (const double v : trace.variance) CHECK(v == 0.0);
}

TEST_CASE("sde_ensemble reproduces Ornstein-Uhlenbeck stationary moments") {
  // dy = -y dt + sqrt(2) dW has stationary mean 0, variance 1.  Starting
  // from the stationary density keeps the whole trace stationary.
  const std::size_t n = 2000;
  const double dt = 0.01;
  const auto trace = numerics::sde_ensemble(
      [](double, double y) { return -y; }, std::sqrt(2.0),
      [](NormalStream& stream) { return stream.normal(); }, 10.0, dt, n, 1234);

  // Monte-Carlo bands: SE(mean) = 1/sqrt(n), SE(var) ~ sqrt(2/n); allow an
  // extra 1% for the Euler-Maruyama step bias (dt/2 here).
  const double mean_band = 5.0 / std::sqrt(static_cast<double>(n));
  const double var_band = 5.0 * std::sqrt(2.0 / static_cast<double>(n)) + 0.01;
  CHECK(std::abs(trace.mean.back()) <= mean_band);
  CHECK(std::abs(trace.variance.back() - 1.0) <= var_band);
  const std::size_t mid = trace.t.size() / 2;
  CHECK(std::abs(trace.mean[mid]) <= mean_band);
  CHECK(std::abs(trace.variance[mid] - 1.0) <= var_band);
}

TEST_CASE("sde_ensemble is bitwise reproducible across thread counts") {
  const numerics::SdeDrift drift = [](double t, double y) { return -2.0 * y + t; };
  const auto sampler = [](NormalStream& stream) { return 0.1 * stream.normal(); };

  numerics::SdeOptions serial;
  serial.threads = 1;
  numerics::SdeOptions wide;
  wide.threads = 4;
  // 700 trajectories span three accumulation chunks, so the merge order
  // across workers is actually exercised.
  const auto a = numerics::sde_ensemble(drift, 0.3, sampler, 1.0, 0.01, 700, 77, serial);
  const auto b = numerics::sde_ensemble(drift, 0.3, sampler, 1.0, 0.01, 700, 77, wide);
  REQUIRE(a.t.size() == b.t.size());
  for (std::size_t i = 0; i < a.t.size(); ++i) {
    CHECK(a.t[i] == b.t[i]);
    CHECK(a.mean[i] == b.mean[i]);
    CHECK(a.variance[i] == b.variance[i]);
  }

  const auto c = numerics::sde_ensemble(drift, 0.3, sampler, 1.0, 0.01, 700, 78, serial);
  CHECK(c.mean.back() != a.mean.back());
}

TEST_CASE("sde_ensemble samples the requested grid and flags unstable steps") {
  numerics::SdeOptions options;
  options.sample_every = 3;
  const auto trace = numerics::sde_ensemble(
      [](double, double y) { return -y; }, 0.1, [](NormalStream& s) { return s.normal(); }, 1.0,
      0.1, 8, 5, options);
  // 10 steps sampled every 3rd: 0, 3, 6, 9 plus the forced final step 10.
  REQUIRE(trace.t.size() == 5);
  CHECK(trace.t.front() == 0.0);
  CHECK(trace.t[1] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(trace.t.back() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(trace.stability_warning);

  options.stability_dt_limit = 0.1;
  const auto flagged = numerics::sde_ensemble(
      [](double, double y) { return -y; }, 0.1, [](NormalStream& s) { return s.normal(); }, 1.0,
      0.1, 8, 5, options);
  CHECK(flagged.stability_warning);
}

TEST_CASE("sde_ensemble validates inputs") {
  const auto sampler = [](NormalStream&) { return 0.0; };
  const numerics::SdeDrift drift = [](double, double) { return 0.0; };
  CHECK_THROWS_AS(numerics::sde_ensemble(drift, 0.1, sampler, 1.0, 0.01, 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(numerics::sde_ensemble(drift, 0.1, sampler, 1.0, 0.0, 8, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(numerics::sde_ensemble(drift, -0.1, sampler, 1.0, 0.01, 8, 1),
                  std::invalid_argument);
}

// ===========================================================================
// Scalar minimization
// ===========================================================================

TEST_CASE("minimize_scalar refines a smooth interior minimum") {
  // A quadratic with offset 5 is numerically flat within ~sqrt(5 eps) of the
  // minimum, so no comparison-based search can localize it below ~3e-8.
  const auto result = numerics::minimize_scalar(
      [](double x) { return (x - 2.0) * (x - 2.0) + 5.0; }, 0.0, 5.0);
  CHECK(std::abs(result.argmin - 2.0) <= 1e-7);
  CHECK(result.min_value == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(result.unimodal);
}

TEST_CASE("minimize_scalar flags multimodal landscapes but still finds a well") {
  const auto f = [](double x) { return x * x * x * x - x * x; };  // wells at +-1/sqrt(2)
  const auto result = numerics::minimize_scalar(f, -2.0, 2.0);
  CHECK_FALSE(result.unimodal);
  CHECK(std::abs(std::abs(result.argmin) - 1.0 / std::sqrt(2.0)) <= 1e-7);
  CHECK(result.min_value == doctest::Approx(-0.25).epsilon(1e-12));
}

TEST_CASE("minimize_scalar handles boundary minima and bad brackets") {
  const auto result = numerics::minimize_scalar([](double x) { return x; }, 0.0, 1.0);
  CHECK(result.argmin <= 1e-8);
  CHECK(result.min_value <= 1e-8);
  CHECK_THROWS_AS(numerics::minimize_scalar([](double x) { return x; }, 1.0, 1.0),
                  std::invalid_argument);
}
