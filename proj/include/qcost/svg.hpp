#pragma once

// ============================================================================
// Minimal line-plot SVG writer
// ============================================================================
//
// Produces self-contained SVG markup for quick visual inspection of sweep
// results.  Not a plotting library: fixed canvas, automatic axis ranges,
// about five ticks per axis, optional log scaling.

#include <string>
#include <vector>

namespace qcost::svg {

/// One polyline: a label for the legend plus (x, y) sample points.
struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// Render series as a 720x480 line plot.  In log mode, points with a
/// non-positive coordinate on the log axis are skipped.  Throws
/// std::invalid_argument if no drawable points remain.
std::string render_line_plot(const std::string& title, const std::string& x_label,
                             const std::string& y_label, const std::vector<Series>& series,
                             bool log_x = false, bool log_y = false);

}  // namespace qcost::svg
