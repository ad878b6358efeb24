#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Experiment run configuration: plain-text key=value files with optional
// [section] grouping headers and '#' comments.  Keys are flat and validated
// against a per-experiment schema (unknown keys are rejected, values are
// range-checked), so a typo fails loudly instead of silently running with a
// default.

namespace qcost::cli {

enum class Experiment {
  LzSweepTau,
  LzSweepBures,
  PenningSweepEta,
  PenningSweepBures,
  CircuitValidate,
};

std::string to_string(Experiment experiment);
std::optional<Experiment> experiment_from_string(std::string_view name);

struct RunConfig {
  Experiment experiment = Experiment::LzSweepTau;
  /// Numeric parameters, fully defaulted and validated for the experiment.
  std::map<std::string, double> params;
  std::string output_path;  ///< defaults to "<experiment>.csv"
  bool emit_svg = false;
  std::uint64_t seed = 42;

  double param(const std::string& key) const;
};

/// Parse and validate a config file.  Throws ConfigError on unknown or
/// duplicate keys (naming both lines), malformed numbers (naming the line),
/// out-of-range values, or a missing `experiment` key.
RunConfig parse_config(const std::string& text);

/// Same, with command-line overrides applied on top of the file entries
/// (an override replaces a file value; unknown override keys are rejected
/// against the same schema).
RunConfig parse_config(const std::string& text,
                       const std::vector<std::pair<std::string, std::string>>& overrides);

}  // namespace qcost::cli
