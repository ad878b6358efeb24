#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "qcost/rng.hpp"

// Shared numerical kernels: adaptive quadrature, fixed-step ODE integration,
// Euler-Maruyama SDE ensembles and 1-d scalar minimization.  Everything here
// is deterministic: identical inputs (including seed) give bitwise identical
// outputs regardless of thread count.

namespace qcost::numerics {

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

/// Result of an adaptive quadrature run.
struct QuadratureResult {
  double value = 0.0;           ///< integral estimate (Richardson-extrapolated)
  double error_estimate = 0.0;  ///< accumulated |S_fine - S_coarse| / 15
  std::size_t evaluations = 0;  ///< integrand evaluation count
};

/// Integrate f over [a, b] with adaptive Simpson subdivision and Richardson
/// extrapolation.  A panel is accepted when its fine/coarse discrepancy is
/// below its share of max(rel_tol * |whole|, 1e-14).  Panels that still
/// disagree at `max_depth` bisections raise QuadratureError carrying the
/// partial result.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-12, int max_depth = 48);

// ---------------------------------------------------------------------------
// ODE integration (classical Runge-Kutta 4)
// ---------------------------------------------------------------------------

/// Instantaneous ODE state.
struct OdeState {
  double t = 0.0;
  std::vector<double> y;
};

/// Right-hand side callback: fills dydt (already sized like y).
using OdeRhs = std::function<void(double t, const std::vector<double>& y, std::vector<double>& dydt)>;

/// Evolve y' = rhs(t, y) from (t0, y0) to t1 with `steps` equal RK4 steps.
/// Throws OdeError at the first step whose result is non-finite.
OdeState ode_evolve(const OdeRhs& rhs, double t0, const std::vector<double>& y0, double t1,
                    std::size_t steps);

// ---------------------------------------------------------------------------
// SDE ensembles (Euler-Maruyama)
// ---------------------------------------------------------------------------

/// Empirical moments of an ensemble, sampled on a uniform time grid.
struct SdeTrace {
  std::vector<double> t;
  std::vector<double> mean;
  std::vector<double> variance;  ///< unbiased (n-1 denominator), clamped >= 0
  bool stability_warning = false;
};

struct SdeOptions {
  /// When > 0 and dt >= this limit, the trace is flagged as unstable
  /// (the drift's explicit-Euler step would no longer contract).
  double stability_dt_limit = 0.0;
  /// Record every k-th step (step 0 and the final step are always recorded).
  std::size_t sample_every = 1;
  /// Worker threads; <= 0 lets worker_count decide.
  int threads = 0;
};

/// Scalar drift a(t, y); the SDE is dy = a dt + noise_amp dW.
using SdeDrift = std::function<double(double t, double y)>;

/// Draw an initial condition from a per-trajectory random stream.  The
/// sampler must consume the same number of variates on every call so stream
/// layouts stay aligned across trajectories.
using SdeSampler = std::function<double(NormalStream&)>;

/// Integrate an ensemble of `n_traj` Euler-Maruyama trajectories of
/// dy = drift(t, y) dt + noise_amp dW on [0, t1] with fixed step dt
/// (t1 is rounded to a whole number of steps).  Trajectory i uses the
/// counter-based stream (seed, i), so results are reproducible and
/// independent of the thread count.
SdeTrace sde_ensemble(const SdeDrift& drift, double noise_amp, const SdeSampler& y0_sampler,
                      double t1, double dt, std::size_t n_traj, std::uint64_t seed,
                      const SdeOptions& options = {});

// ---------------------------------------------------------------------------
// Scalar minimization (golden-section)
// ---------------------------------------------------------------------------

struct MinimizeResult {
  double argmin = 0.0;
  double min_value = 0.0;
  /// False when the initial bracketing scan saw structure inconsistent with
  /// a single interior minimum; the returned point is then best-effort.
  bool unimodal = true;
};

/// Minimize f on [lo, hi] by a coarse scan followed by golden-section
/// refinement until the bracket is below x_tol (absolute in x).
MinimizeResult minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                               double x_tol = 1e-10, std::size_t scan_points = 65);

}  // namespace qcost::numerics
