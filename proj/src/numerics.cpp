#include "qcost/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcost/errors.hpp"
#include "qcost/parallel.hpp"
#include "qcost/welford.hpp"

namespace qcost::numerics {

// ===========================================================================
// Adaptive Simpson quadrature
// ===========================================================================

namespace {

// Absolute floor below which we stop chasing relative accuracy; integrals
// that small are zero for every purpose this library has.
constexpr double kAbsFloor = 1e-14;

struct SimpsonState {
  const std::function<double(double)>& f;
  int max_depth;
  std::size_t evaluations = 0;
  double error_accum = 0.0;
  bool converged = true;

  double eval(double x) {
    ++evaluations;
    return f(x);
  }

  // Refine one panel [a, b] whose coarse Simpson estimate is `coarse`
  // (midpoint m, values fa/fm/fb already known).  `tol` is this panel's
  // share of the global error budget.
  double refine(double a, double fa, double m, double fm, double b, double fb, double coarse,
                double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double fine = left + right;
    const double delta = fine - coarse;

    if (std::abs(delta) <= 15.0 * tol || depth >= max_depth) {
      if (std::abs(delta) > 15.0 * tol) converged = false;
      error_accum += std::abs(delta) / 15.0;
      return fine + delta / 15.0;  // Richardson extrapolation
    }
    return refine(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1) +
           refine(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, int max_depth) {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("integrate: rel_tol must be positive");
  if (max_depth < 1) throw std::invalid_argument("integrate: max_depth must be >= 1");
  if (a == b) return {0.0, 0.0, 0};

  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }

  SimpsonState state{f, max_depth};
  const double m = 0.5 * (a + b);
  const double fa = state.eval(a);
  const double fm = state.eval(m);
  const double fb = state.eval(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);

  const double tol = std::max(rel_tol * std::abs(whole), kAbsFloor);
  const double value = sign * state.refine(a, fa, m, fm, b, fb, whole, tol, 0);

  if (!state.converged) {
    throw QuadratureError("integrate: panel did not converge within depth limit", value,
                          state.error_accum, state.evaluations);
  }
  return {value, state.error_accum, state.evaluations};
}

// ===========================================================================
// Fixed-step RK4
// ===========================================================================

OdeState ode_evolve(const OdeRhs& rhs, double t0, const std::vector<double>& y0, double t1,
                    std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("ode_evolve: steps must be >= 1");
  if (y0.empty()) throw std::invalid_argument("ode_evolve: empty state");

  const double h = (t1 - t0) / static_cast<double>(steps);
  const std::size_t n = y0.size();

  std::vector<double> y = y0;
  std::vector<double> k1(n), k2(n), k3(n), k4(n), scratch(n);

  for (std::size_t step = 0; step < steps; ++step) {
    const double t = t0 + static_cast<double>(step) * h;

    rhs(t, y, k1);
    for (std::size_t i = 0; i < n; ++i) scratch[i] = y[i] + 0.5 * h * k1[i];
    rhs(t + 0.5 * h, scratch, k2);
    for (std::size_t i = 0; i < n; ++i) scratch[i] = y[i] + 0.5 * h * k2[i];
    rhs(t + 0.5 * h, scratch, k3);
    for (std::size_t i = 0; i < n; ++i) scratch[i] = y[i] + h * k3[i];
    rhs(t + h, scratch, k4);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }

    for (double v : y) {
      if (!std::isfinite(v)) {
        throw OdeError("ode_evolve: state became non-finite", t + h);
      }
    }
  }
  return {t1, std::move(y)};
}

// ===========================================================================
// Euler-Maruyama ensembles
// ===========================================================================

namespace {

// Trajectories per accumulation chunk.  Fixed (never derived from the thread
// count) so that chunk boundaries, and therefore rounding, are invariant.
constexpr std::size_t kChunkTrajectories = 256;

std::vector<std::size_t> sample_steps(std::size_t steps, std::size_t every) {
  if (every == 0) every = 1;
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= steps; k += every) out.push_back(k);
  if (out.back() != steps) out.push_back(steps);
  return out;
}

}  // namespace

SdeTrace sde_ensemble(const SdeDrift& drift, double noise_amp, const SdeSampler& y0_sampler,
                      double t1, double dt, std::size_t n_traj, std::uint64_t seed,
                      const SdeOptions& options) {
  if (n_traj < 2) throw std::invalid_argument("sde_ensemble: n_traj must be >= 2");
  if (!(dt > 0.0)) throw std::invalid_argument("sde_ensemble: dt must be positive");
  if (!(t1 > 0.0)) throw std::invalid_argument("sde_ensemble: t1 must be positive");
  if (!(noise_amp >= 0.0)) throw std::invalid_argument("sde_ensemble: noise_amp must be >= 0");

  const auto steps = static_cast<std::size_t>(std::max<long long>(1, std::llround(t1 / dt)));
  const std::vector<std::size_t> record = sample_steps(steps, options.sample_every);
  const std::size_t n_samples = record.size();
  const double sqrt_dt = std::sqrt(dt);

  const std::size_t n_chunks = (n_traj + kChunkTrajectories - 1) / kChunkTrajectories;
  std::vector<MomentsColumn> chunk_moments(n_chunks, MomentsColumn(n_samples));

  parallel_chunks(
      n_chunks,
      [&](std::size_t chunk) {
        auto& column = chunk_moments[chunk];
        const std::size_t begin = chunk * kChunkTrajectories;
        const std::size_t end = std::min(begin + kChunkTrajectories, n_traj);
        for (std::size_t traj = begin; traj < end; ++traj) {
          NormalStream stream(seed, traj);
          double y = y0_sampler(stream);
          std::size_t next_record = 0;
          if (record[next_record] == 0) {
            column[0].add(y);
            ++next_record;
          }
          for (std::size_t k = 0; k < steps; ++k) {
            const double t = static_cast<double>(k) * dt;
            // One variate per step even when noise_amp == 0, so stream
            // consumption (and thus reproducibility) is drive-independent.
            y += drift(t, y) * dt + noise_amp * sqrt_dt * stream.normal();
            if (next_record < n_samples && record[next_record] == k + 1) {
              column[next_record].add(y);
              ++next_record;
            }
          }
        }
      },
      options.threads);

  SdeTrace trace;
  trace.t.resize(n_samples);
  trace.mean.resize(n_samples);
  trace.variance.resize(n_samples);
  trace.stability_warning = options.stability_dt_limit > 0.0 && dt >= options.stability_dt_limit;

  for (std::size_t i = 0; i < n_samples; ++i) {
    Moments total;
    for (std::size_t chunk = 0; chunk < n_chunks; ++chunk) {  // fixed reduction order
      total.merge(chunk_moments[chunk][i]);
    }
    trace.t[i] = static_cast<double>(record[i]) * dt;
    trace.mean[i] = total.mean;
    trace.variance[i] = total.variance();
  }
  return trace;
}

// ===========================================================================
// Golden-section minimization
// ===========================================================================

MinimizeResult minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                               double x_tol, std::size_t scan_points) {
  if (!(lo < hi)) throw std::invalid_argument("minimize_scalar: need lo < hi");
  if (scan_points < 3) scan_points = 3;

  // Coarse scan: locates the global basin and sniffs for extra local minima.
  std::vector<double> xs(scan_points), fs(scan_points);
  for (std::size_t i = 0; i < scan_points; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(scan_points - 1);
    fs[i] = f(xs[i]);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < scan_points; ++i) {
    if (fs[i] < fs[best]) best = i;
  }

  std::size_t interior_minima = 0;
  for (std::size_t i = 1; i + 1 < scan_points; ++i) {
    if (fs[i] < fs[i - 1] && fs[i] < fs[i + 1]) ++interior_minima;
  }
  bool unimodal = interior_minima <= 1;

  // Golden-section refinement inside the bracketing pair around `best`.
  double a = xs[best == 0 ? 0 : best - 1];
  double b = xs[best + 1 >= scan_points ? scan_points - 1 : best + 1];

  constexpr double inv_phi = 0.6180339887498948482;  // 1/φ
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > x_tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }

  MinimizeResult result;
  result.argmin = f1 <= f2 ? x1 : x2;
  result.min_value = std::min(f1, f2);
  // Keep the scan winner if refinement somehow landed higher (can only
  // happen for badly multimodal inputs).
  if (fs[best] < result.min_value) {
    result.argmin = xs[best];
    result.min_value = fs[best];
    unimodal = false;
  }
  result.unimodal = unimodal;
  return result;
}

}  // namespace qcost::numerics
