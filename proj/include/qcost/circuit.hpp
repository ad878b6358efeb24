#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "qcost/constants.hpp"

// Stochastic thermodynamics of the control circuit.
//
// The current I in a coil pair (total inductance 2L, series resistance R,
// temperature T) obeys the Langevin equation
//
//     2L dI/dt = -R I + V(t) + sqrt(2 R k_B T) xi(t),
//
// and the produced magnetic field is B = A I.  The entropy production rate
// of the current ensemble splits into a mean (dissipative) part and a
// fluctuation part driven by the variance D2 = Var[I]:
//
//     dS/dt = (R/T) <I>^2 + (R / 4 L^2) (k_B T - 2 L D2)^2 / (T D2).
//
// A protocol that drags the mean current through a stationary-variance
// ensemble therefore costs S = chi * Int_0^tau <B>^2 dt with chi = R/(T A^2);
// off-stationary variance only ever adds entropy, so that expression is a
// lower bound in general.

namespace qcost::circuit {

struct CircuitParams {
  /// Validates R, L, T, A > 0; throws std::invalid_argument otherwise.
  CircuitParams(double resistance, double inductance, double temperature, double coil_constant);

  double R;  ///< series resistance (ohm)
  double L;  ///< per-coil inductance (henry); the pair contributes 2L
  double T;  ///< bath temperature (kelvin)
  double A;  ///< coil geometry constant B = A I (tesla per ampere)

  /// Boltzmann constant, compiled in (strict SI everywhere).
  static constexpr double k_B = k_boltzmann;

  /// chi = R / (T A^2): entropy per unit of Int B^2 dt.
  double chi() const noexcept { return R / (T * A * A); }

  /// Stationary current variance k_B T / (2 L).
  double stationary_variance() const noexcept { return k_B * T / (2.0 * L); }

  /// Mean-current relaxation time 2L / R (also the explicit-Euler stability
  /// limit for the drift).
  double relaxation_time() const noexcept { return 2.0 * L / R; }
};

/// First two moments of the current ensemble at one instant.
struct MomentState {
  double t = 0.0;             ///< second
  double mean_current = 0.0;  ///< <I> (ampere)
  double variance = 0.0;      ///< Var[I] (ampere^2)
};

/// A target mean-current protocol I(t) with its time derivative.
struct CurrentProtocol {
  std::function<double(double)> value;       ///< I(t), ampere
  std::function<double(double)> derivative;  ///< dI/dt, ampere/s
};

/// Voltage that makes the mean current follow `target` exactly:
/// V = 2 L dI/dt + R I.
double reverse_voltage(const CurrentProtocol& target, const CircuitParams& p, double t);

/// Advance the moment ODEs by dt under a voltage held constant at `voltage`
/// across the step.  Both updates are exact exponential solutions, so a
/// stationary variance is preserved to the last bit and no step-size
/// stability limit applies.  The variance update never sees the voltage.
MomentState moment_step(const MomentState& state, double voltage, const CircuitParams& p,
                        double dt);

/// Instantaneous entropy production rate (W/K) of an ensemble with the given
/// moments.  Throws std::domain_error when variance <= 0 (the fluctuation
/// term is singular there).
double entropy_rate(const MomentState& state, const CircuitParams& p);

/// Integrated entropy cost S = chi * Int_0^tau B(t)^2 dt (J/K) of a mean
/// field profile run at stationary variance.
double protocol_entropy(const std::function<double(double)>& mean_field, const CircuitParams& p,
                        double tau, double rel_tol = 1e-10);

// ---------------------------------------------------------------------------
// Langevin ensemble simulation
// ---------------------------------------------------------------------------

/// Start every trajectory from the thermal ensemble: I ~ N(mean, k_B T / 2L).
struct StationaryStart {
  double mean = 0.0;
};

/// Start every trajectory from N(mean, variance); variance = 0 pins them.
struct FixedStart {
  double mean = 0.0;
  double variance = 0.0;
};

using InitialCondition = std::variant<StationaryStart, FixedStart>;

/// Drive the coil with an explicit voltage waveform.
struct VoltageSource {
  std::function<double(double)> voltage;
};

/// Drive the coil with the reverse-engineered voltage for a target current.
/// The per-step mean increment then telescopes exactly, so the ensemble mean
/// is unbiased at any step size.
struct CurrentTarget {
  CurrentProtocol target;
};

using Drive = std::variant<VoltageSource, CurrentTarget>;

struct EnsembleSample {
  double t = 0.0;
  double empirical_mean = 0.0;
  double empirical_variance = 0.0;  ///< unbiased; exactly 0 for a pinned ensemble
  double entropy_rate = 0.0;        ///< from the empirical moments; +inf if variance == 0
};

struct EnsembleTrace {
  std::vector<EnsembleSample> samples;  ///< t strictly increasing
  std::size_t n_traj = 0;
  std::uint64_t seed = 0;
  /// Set when dt >= 2L/R.  The exponential sampler itself stays exact in
  /// distribution; the flag marks that an explicit-Euler discretization of
  /// the same drift would not contract.
  bool stability_warning = false;
};

struct SimulateOptions {
  std::size_t sample_every = 1;  ///< record every k-th step (0th and last always)
  int threads = 0;               ///< worker threads; <= 0 lets worker_count decide
};

/// Simulate `n_traj >= 2` Langevin trajectories on [0, tau] with step dt
/// (tau is rounded to a whole number of steps).  Stepping is exact in
/// distribution -- each step draws from the true conditional
/// Ornstein-Uhlenbeck transition -- so the sampled moments carry no
/// discretization bias.  Counter-based RNG streams keyed by (seed,
/// trajectory index) make the trace bitwise reproducible independent of the
/// thread count.
EnsembleTrace simulate_circuit(const Drive& drive, const CircuitParams& p, double tau, double dt,
                               std::size_t n_traj, std::uint64_t seed,
                               const InitialCondition& initial,
                               const SimulateOptions& options = {});

}  // namespace qcost::circuit
