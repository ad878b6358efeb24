#pragma once

// ============================================================================
// Experiment runners
// ============================================================================
//
// Each experiment maps a validated RunConfig to a CSV table (and optionally
// an SVG plot).  render_experiment is pure — it touches no files — so tests
// can assert on output bytes; run() adds the file I/O.

#include <optional>
#include <string>

#include "qcost/config.hpp"

namespace qcost::cli {

struct ExperimentOutput {
  std::string csv;
  std::optional<std::string> svg;  ///< present when config.emit_svg is set
};

/// Compute an experiment's outputs without touching the filesystem.
ExperimentOutput render_experiment(const RunConfig& config);

/// Render and write config.output_path (plus the same path with a .svg
/// extension when requested).  Throws ConfigError if a file cannot be
/// written.  Returns the paths written, CSV first.
std::vector<std::string> run(const RunConfig& config);

}  // namespace qcost::cli
