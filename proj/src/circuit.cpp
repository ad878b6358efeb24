#include "qcost/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qcost/numerics.hpp"
#include "qcost/parallel.hpp"
#include "qcost/rng.hpp"
#include "qcost/welford.hpp"

namespace qcost::circuit {

CircuitParams::CircuitParams(double resistance, double inductance, double temperature,
                             double coil_constant)
    : R(resistance), L(inductance), T(temperature), A(coil_constant) {
  if (!(R > 0.0)) throw std::invalid_argument("CircuitParams: R must be positive");
  if (!(L > 0.0)) throw std::invalid_argument("CircuitParams: L must be positive");
  if (!(T > 0.0)) throw std::invalid_argument("CircuitParams: T must be positive");
  if (!(A > 0.0)) throw std::invalid_argument("CircuitParams: A must be positive");
}

double reverse_voltage(const CurrentProtocol& target, const CircuitParams& p, double t) {
  return 2.0 * p.L * target.derivative(t) + p.R * target.value(t);
}

MomentState moment_step(const MomentState& state, double voltage, const CircuitParams& p,
                        double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("moment_step: dt must be positive");
  const double theta = p.R / (2.0 * p.L);  // mean relaxation rate
  const double decay = std::exp(-theta * dt);
  const double v_ss = p.stationary_variance();

  MomentState next;
  next.t = state.t + dt;
  // d<I>/dt = (V - R <I>) / 2L, solved exactly for constant V.
  next.mean_current = voltage / p.R + (state.mean_current - voltage / p.R) * decay;
  // The variance relaxes at twice the mean rate and never sees the voltage:
  // dD2/dt = -(R/L) D2 + R k_B T / (2 L^2).  Writing the exact update around
  // v_ss keeps a stationary ensemble stationary to the last bit.
  next.variance = v_ss + (state.variance - v_ss) * decay * decay;
  return next;
}

double entropy_rate(const MomentState& state, const CircuitParams& p) {
  if (!(state.variance > 0.0)) {
    throw std::domain_error("entropy_rate: variance must be positive");
  }
  const double mean_term = p.R / p.T * state.mean_current * state.mean_current;
  const double mismatch = CircuitParams::k_B * p.T - 2.0 * p.L * state.variance;
  const double fluct_term =
      p.R / (4.0 * p.L * p.L) * mismatch * mismatch / (p.T * state.variance);
  return mean_term + fluct_term;
}

double protocol_entropy(const std::function<double(double)>& mean_field, const CircuitParams& p,
                        double tau, double rel_tol) {
  if (!(tau > 0.0)) throw std::invalid_argument("protocol_entropy: tau must be positive");
  // Normalize the field before integrating: the quadrature's convergence
  // floor is absolute, and tesla-scale profiles sit some twenty orders of
  // magnitude below it, which would let the first coarse estimate pass as
  // converged.  The entropy is quadratic in B, so the scale factors out.
  double scale = 0.0;
  for (int i = 0; i <= 64; ++i) {
    scale = std::max(scale, std::abs(mean_field(tau * static_cast<double>(i) / 64.0)));
  }
  if (scale == 0.0) scale = 1.0;
  const auto quad = numerics::integrate(
      [&mean_field, scale](double t) {
        const double b = mean_field(t) / scale;
        return b * b;
      },
      0.0, tau, rel_tol);
  return p.chi() * scale * scale * quad.value;
}

// ===========================================================================
// Ensemble simulation (exact Ornstein-Uhlenbeck stepping)
// ===========================================================================

namespace {

constexpr std::size_t kChunkTrajectories = 256;

// Deterministic per-step mean increment of the exact update
//   I_{n+1} = decay * I_n + increment_n + noise_n,
// i.e. the drive convolved with the relaxation kernel over one step.
std::vector<double> drive_increments(const Drive& drive, const CircuitParams& p, double dt,
                                     std::size_t steps, double decay) {
  std::vector<double> inc(steps);
  const double theta = p.R / (2.0 * p.L);

  if (const auto* source = std::get_if<VoltageSource>(&drive)) {
    // (1/2L) Int_0^dt exp(-theta (dt-u)) V(t+u) du by a two-point product
    // rule: Gauss-Legendre nodes, but with weights matched to the exact
    // zeroth and first moments of the exponential kernel.  Exact for V
    // affine in t (zero mean bias), fourth-order in dt for smooth V.
    const double half = 0.5 * dt;
    const double offset = half / std::sqrt(3.0);
    const double u1 = half - offset;
    const double u2 = half + offset;
    const double x = theta * dt;
    const double em1 = -std::expm1(-x);  // 1 - decay, cancellation-free
    const double m0 = em1 / theta;
    const double m1 = (dt * em1 - (em1 - x * decay) / theta) / theta;
    const double w2 = (m1 - u1 * m0) / ((u2 - u1) * 2.0 * p.L);
    const double w1 = m0 / (2.0 * p.L) - w2;
    for (std::size_t k = 0; k < steps; ++k) {
      const double t = static_cast<double>(k) * dt;
      inc[k] = w1 * source->voltage(t + u1) + w2 * source->voltage(t + u2);
    }
    return inc;
  }

  // Current target: the convolution of the reverse-engineered voltage
  // telescopes to I_tgt(t+dt) - decay * I_tgt(t) exactly, for any dt.  A
  // mean started on target therefore stays on target with zero step bias.
  const auto& target = std::get<CurrentTarget>(drive).target;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    inc[k] = target.value(t + dt) - decay * target.value(t);
  }
  return inc;
}

std::vector<std::size_t> sample_steps(std::size_t steps, std::size_t every) {
  if (every == 0) every = 1;
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= steps; k += every) out.push_back(k);
  if (out.back() != steps) out.push_back(steps);
  return out;
}

}  // namespace

EnsembleTrace simulate_circuit(const Drive& drive, const CircuitParams& p, double tau, double dt,
                               std::size_t n_traj, std::uint64_t seed,
                               const InitialCondition& initial, const SimulateOptions& options) {
  if (n_traj < 2) throw std::invalid_argument("simulate_circuit: n_traj must be >= 2");
  if (!(dt > 0.0)) throw std::invalid_argument("simulate_circuit: dt must be positive");
  if (!(tau > 0.0)) throw std::invalid_argument("simulate_circuit: tau must be positive");

  double init_mean = 0.0;
  double init_std = 0.0;
  if (const auto* stationary = std::get_if<StationaryStart>(&initial)) {
    init_mean = stationary->mean;
    init_std = std::sqrt(p.stationary_variance());
  } else {
    const auto& fixed = std::get<FixedStart>(initial);
    if (fixed.variance < 0.0) {
      throw std::invalid_argument("simulate_circuit: initial variance must be >= 0");
    }
    init_mean = fixed.mean;
    init_std = std::sqrt(fixed.variance);
  }

  const auto steps = static_cast<std::size_t>(std::max<long long>(1, std::llround(tau / dt)));
  const double theta = p.R / (2.0 * p.L);
  const double decay = std::exp(-theta * dt);
  // Exact conditional standard deviation of the transition over one step.
  const double noise_std = std::sqrt(p.stationary_variance() * (1.0 - decay * decay));

  const std::vector<double> inc = drive_increments(drive, p, dt, steps, decay);
  const std::vector<std::size_t> record = sample_steps(steps, options.sample_every);
  const std::size_t n_samples = record.size();

  const std::size_t n_chunks = (n_traj + kChunkTrajectories - 1) / kChunkTrajectories;
  std::vector<numerics::MomentsColumn> chunk_moments(n_chunks, numerics::MomentsColumn(n_samples));

  parallel_chunks(
      n_chunks,
      [&](std::size_t chunk) {
        auto& column = chunk_moments[chunk];
        const std::size_t begin = chunk * kChunkTrajectories;
        const std::size_t end = std::min(begin + kChunkTrajectories, n_traj);
        for (std::size_t traj = begin; traj < end; ++traj) {
          numerics::NormalStream stream(seed, traj);
          double current = init_mean + init_std * stream.normal();
          std::size_t next_record = 0;
          if (record[next_record] == 0) {
            column[0].add(current);
            ++next_record;
          }
          for (std::size_t k = 0; k < steps; ++k) {
            current = decay * current + inc[k] + noise_std * stream.normal();
            if (next_record < n_samples && record[next_record] == k + 1) {
              column[next_record].add(current);
              ++next_record;
            }
          }
        }
      },
      options.threads);

  EnsembleTrace trace;
  trace.samples.resize(n_samples);
  trace.n_traj = n_traj;
  trace.seed = seed;
  trace.stability_warning = dt >= p.relaxation_time();

  for (std::size_t i = 0; i < n_samples; ++i) {
    numerics::Moments total;
    for (std::size_t chunk = 0; chunk < n_chunks; ++chunk) {  // fixed reduction order
      total.merge(chunk_moments[chunk][i]);
    }
    auto& s = trace.samples[i];
    s.t = static_cast<double>(record[i]) * dt;
    s.empirical_mean = total.mean;
    s.empirical_variance = total.variance();
    s.entropy_rate = s.empirical_variance > 0.0
                         ? entropy_rate({s.t, s.empirical_mean, s.empirical_variance}, p)
                         : std::numeric_limits<double>::infinity();
  }
  return trace;
}

}  // namespace qcost::circuit
