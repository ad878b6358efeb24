#include "qcost/experiments.hpp"

#include <cmath>
#include <fstream>
#include <utility>
#include <vector>

#include "qcost/circuit.hpp"
#include "qcost/csv.hpp"
#include "qcost/errors.hpp"
#include "qcost/landau_zener.hpp"
#include "qcost/penning.hpp"
#include "qcost/protocols.hpp"
#include "qcost/svg.hpp"

namespace qcost::cli {

namespace {

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = hi;
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                                   static_cast<double>(n - 1));
  }
  out.back() = hi;
  return out;
}

svg::Series column_series(const Table& table, std::size_t x_col, std::size_t y_col) {
  svg::Series series;
  series.label = table.header[y_col];
  series.points.reserve(table.rows.size());
  for (const auto& row : table.rows) series.points.emplace_back(row[x_col], row[y_col]);
  return series;
}

// ---------------------------------------------------------------------------
// Two-level driving: cost vs duration at fixed sweep amplitude
// ---------------------------------------------------------------------------

ExperimentOutput run_lz_sweep_tau(const RunConfig& config) {
  const double delta = config.param("delta");
  const double g0 = config.param("g0");
  const double mu = config.param("mu");
  const auto points = static_cast<std::size_t>(config.param("points"));

  // Both cost integrals scale exactly with duration (zeta_z ∝ tau,
  // zeta_cd ∝ 1/tau), so one quadrature at tau = 1 covers the whole sweep.
  const landau_zener::LzConfig unit{delta, g0, 1.0, mu};
  const double a = landau_zener::zeta_z(unit);
  const double b = landau_zener::zeta_cd(unit);

  Table table;
  table.header = {"tau", "zeta_z", "zeta_cd", "zeta_total"};
  for (const double tau : log_grid(config.param("tau_lo"), config.param("tau_hi"), points)) {
    const double zz = a * tau;
    const double zcd = b / tau;
    table.rows.push_back({tau, zz, zcd, zz + zcd});
  }

  ExperimentOutput out{to_csv(table), std::nullopt};
  if (config.emit_svg) {
    out.svg = svg::render_line_plot(
        "Driving cost vs protocol duration", "tau", "zeta",
        {column_series(table, 0, 1), column_series(table, 0, 2), column_series(table, 0, 3)},
        /*log_x=*/true, /*log_y=*/true);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Two-level driving: cost vs target state distance at fixed duration
// ---------------------------------------------------------------------------

ExperimentOutput run_lz_sweep_bures(const RunConfig& config) {
  const double delta = config.param("delta");
  const double tau = config.param("tau");
  const double mu = config.param("mu");
  const auto points = static_cast<std::size_t>(config.param("points"));

  Table table;
  table.header = {"bures",    "g0",       "zeta_z",  "zeta_cd",
                  "zeta_total", "cd_bound", "tau_min", "zeta_min"};
  for (const double bures : linear_grid(config.param("bures_lo"), config.param("bures_hi"),
                                        points)) {
    const double g0 = delta * std::tan(bures);
    const landau_zener::LzConfig cfg{delta, g0, tau, mu};
    const auto breakdown = landau_zener::entropy_breakdown(cfg);
    table.rows.push_back({breakdown.bures, g0, breakdown.zeta_z, breakdown.zeta_cd,
                          breakdown.zeta_total, breakdown.cd_bound, breakdown.tau_min,
                          breakdown.zeta_min});
  }

  ExperimentOutput out{to_csv(table), std::nullopt};
  if (config.emit_svg) {
    out.svg = svg::render_line_plot(
        "Driving cost vs state distance", "bures angle", "zeta",
        {column_series(table, 0, 3), column_series(table, 0, 4), column_series(table, 0, 5),
         column_series(table, 0, 7)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trap ramp: cost vs dimensionless duration, both ramp directions
// ---------------------------------------------------------------------------

ExperimentOutput run_penning_sweep_eta(const RunConfig& config) {
  const double c = config.param("c");
  const double nu = config.param("nu");
  const double eta_lo = config.param("eta_lo");
  const double eta_hi = config.param("eta_hi");
  const auto points = static_cast<std::size_t>(config.param("points"));
  const auto grid = static_cast<std::size_t>(config.param("grid"));

  Table table;
  table.header = {"c", "eta", "min_eta", "zeta_d", "lower_bound"};
  for (const double ratio : {c, 1.0 / c}) {
    const double threshold = penning::min_eta(ratio, nu, grid);

    double start = eta_lo;
    if (eta_lo == 0.0) {
      // Auto mode: begin just above the realizability edge.  A free ramp
      // (threshold 0) has no edge, so fall back to a small fraction of the
      // requested window.
      start = threshold > 0.0 ? threshold * (1.0 + 1e-6) : eta_hi * 1e-2;
    } else if (eta_lo < threshold) {
      // The user asked for durations below the edge.  Probe the field
      // profile densely so the error names the offending ramp position.
      const penning::PenningConfig probe{ratio, eta_lo, nu};
      for (std::size_t i = 0; i <= grid; ++i) {
        penning::bz_profile(probe, static_cast<double>(i) / static_cast<double>(grid));
      }
      // No violation found on the grid: eta_lo is realizable after all
      // (threshold carries grid-resolution slack), so keep it.
    }
    if (!(start < eta_hi)) {
      throw ConstraintError("eta_hi " + format_double(eta_hi) +
                                " leaves no realizable window above the minimal duration " +
                                format_double(threshold) + " for ratio " + format_double(ratio),
                            threshold);
    }

    for (const double eta : linear_grid(start, eta_hi, points)) {
      const penning::PenningConfig cfg{ratio, eta, nu};
      table.rows.push_back(
          {ratio, eta, threshold, penning::zeta_d(cfg), penning::zeta_bounds(cfg)});
    }
  }

  ExperimentOutput out{to_csv(table), std::nullopt};
  if (config.emit_svg) {
    // Split the two ramp directions into separate series by row blocks.
    std::vector<svg::Series> series;
    const std::size_t half = table.rows.size() / 2;
    for (const bool second : {false, true}) {
      svg::Series cost, bound;
      const double ratio = second ? 1.0 / c : c;
      cost.label = "zeta_d (c=" + format_double(ratio) + ")";
      bound.label = "bound (c=" + format_double(ratio) + ")";
      for (std::size_t i = second ? half : 0; i < (second ? table.rows.size() : half); ++i) {
        cost.points.emplace_back(table.rows[i][1], table.rows[i][3]);
        bound.points.emplace_back(table.rows[i][1], table.rows[i][4]);
      }
      series.push_back(std::move(cost));
      series.push_back(std::move(bound));
    }
    out.svg = svg::render_line_plot("Ramp cost vs dimensionless duration", "eta", "zeta_d",
                                    series);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trap ramp: cost asymmetry between directions at fixed duration
// ---------------------------------------------------------------------------

ExperimentOutput run_penning_sweep_bures(const RunConfig& config) {
  const double eta = config.param("eta");
  const double nu = config.param("nu");
  const auto points = static_cast<std::size_t>(config.param("points"));

  Table table;
  table.header = {"bures", "c_compression", "zeta_d_compression", "zeta_d_expansion"};
  for (const double bures : linear_grid(config.param("bures_lo"), config.param("bures_hi"),
                                        points)) {
    const double c_comp = penning::ratio_for_bures(bures, /*compression=*/true);
    const double c_exp = penning::ratio_for_bures(bures, /*compression=*/false);
    const penning::PenningConfig comp{c_comp, eta, nu};
    const penning::PenningConfig expn{c_exp, eta, nu};
    table.rows.push_back({bures, c_comp, penning::zeta_d(comp), penning::zeta_d(expn)});
  }

  ExperimentOutput out{to_csv(table), std::nullopt};
  if (config.emit_svg) {
    out.svg = svg::render_line_plot("Ramp cost asymmetry", "bures angle", "zeta_d",
                                    {column_series(table, 0, 2), column_series(table, 0, 3)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stochastic circuit model vs moment equations
// ---------------------------------------------------------------------------

ExperimentOutput run_circuit_validate(const RunConfig& config) {
  const circuit::CircuitParams params{config.param("R"), config.param("L"), config.param("T"),
                                      config.param("A")};
  const double amp = config.param("amp");
  const double tau = config.param("tau");
  double dt = config.param("dt");
  if (dt == 0.0) dt = params.relaxation_time() / 100.0;
  const auto n_traj = static_cast<std::size_t>(config.param("n_traj"));

  // Smooth 0 → amp current ramp with zero slope at both ends.
  const protocols::SmoothRamp ramp = protocols::lz_quintic();
  circuit::CurrentProtocol target;
  target.value = [ramp, amp, tau](double t) { return amp * (ramp.eval(t / tau) + 1.0) / 2.0; };
  target.derivative = [ramp, amp, tau](double t) {
    return amp * ramp.eval(t / tau, 1) / (2.0 * tau);
  };

  circuit::SimulateOptions options;
  options.sample_every = static_cast<std::size_t>(config.param("sample_every"));
  const auto trace =
      circuit::simulate_circuit(circuit::CurrentTarget{target}, params, tau, dt, n_traj,
                                config.seed, circuit::StationaryStart{target.value(0.0)},
                                options);

  Table table;
  table.header = {"t", "target_mean", "empirical_mean", "empirical_variance", "entropy_rate"};
  for (const auto& sample : trace.samples) {
    table.rows.push_back({sample.t, target.value(sample.t), sample.empirical_mean,
                          sample.empirical_variance, sample.entropy_rate});
  }

  ExperimentOutput out{to_csv(table), std::nullopt};
  if (config.emit_svg) {
    out.svg = svg::render_line_plot("Ensemble mean vs moment target", "t", "current",
                                    {column_series(table, 0, 1), column_series(table, 0, 2)});
  }
  return out;
}

std::string svg_path_for(const std::string& csv_path) {
  const std::string suffix = ".csv";
  if (csv_path.size() >= suffix.size() &&
      csv_path.compare(csv_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return csv_path.substr(0, csv_path.size() - suffix.size()) + ".svg";
  }
  return csv_path + ".svg";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

}  // namespace

ExperimentOutput render_experiment(const RunConfig& config) {
  switch (config.experiment) {
    case Experiment::LzSweepTau: return run_lz_sweep_tau(config);
    case Experiment::LzSweepBures: return run_lz_sweep_bures(config);
    case Experiment::PenningSweepEta: return run_penning_sweep_eta(config);
    case Experiment::PenningSweepBures: return run_penning_sweep_bures(config);
    case Experiment::CircuitValidate: return run_circuit_validate(config);
  }
  throw ConfigError("unknown experiment enum value");
}

std::vector<std::string> run(const RunConfig& config) {
  const ExperimentOutput output = render_experiment(config);
  std::vector<std::string> written;
  write_file(config.output_path, output.csv);
  written.push_back(config.output_path);
  if (output.svg) {
    const std::string path = svg_path_for(config.output_path);
    write_file(path, *output.svg);
    written.push_back(path);
  }
  return written;
}

}  // namespace qcost::cli
