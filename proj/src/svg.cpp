#include "qcost/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qcost/csv.hpp"

namespace qcost::svg {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 72.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 56.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
constexpr int kPaletteSize = 5;

struct Axis {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  bool log = false;

  void include(double v) {
    if (log) {
      if (!(v > 0.0)) return;
      v = std::log10(v);
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  void finalize() {
    if (!(lo <= hi)) throw std::invalid_argument("svg: no drawable points");
    if (lo == hi) {  // degenerate range: widen symmetrically
      const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
      lo -= pad;
      hi += pad;
    }
  }

  /// Map a data value to [0, 1] along the axis; NaN for unplottable points.
  double unit(double v) const {
    if (log) {
      if (!(v > 0.0)) return std::numeric_limits<double>::quiet_NaN();
      v = std::log10(v);
    }
    return (v - lo) / (hi - lo);
  }

  /// Tick positions in data space, roughly five per axis.
  std::vector<double> ticks() const {
    const double span = hi - lo;
    const double raw_step = span / 4.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw_step)));
    double step = mag;
    for (const double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
      if (mag * m >= raw_step) {
        step = mag * m;
        break;
      }
    }
    std::vector<double> out;
    for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
      // Snap values that should be exact (e.g. 0) to kill -0 and drift.
      const double snapped = std::round(v / step) * step;
      out.push_back(log ? std::pow(10.0, snapped) : snapped);
    }
    return out;
  }
};

std::string escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (const char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string tick_label(double v) {
  // Round to 6 significant digits so ticks read cleanly.
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

}  // namespace

std::string render_line_plot(const std::string& title, const std::string& x_label,
                             const std::string& y_label, const std::vector<Series>& series,
                             bool log_x, bool log_y) {
  Axis x_axis;
  Axis y_axis;
  x_axis.log = log_x;
  y_axis.log = log_y;
  for (const auto& s : series) {
    for (const auto& [px, py] : s.points) {
      if (log_x && !(px > 0.0)) continue;
      if (log_y && !(py > 0.0)) continue;
      if (!std::isfinite(px) || !std::isfinite(py)) continue;
      x_axis.include(px);
      y_axis.include(py);
    }
  }
  x_axis.finalize();
  y_axis.finalize();

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto to_px = [&](double ux) { return kMarginLeft + ux * plot_w; };
  const auto to_py = [&](double uy) { return kMarginTop + (1.0 - uy) * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << escape(title) << "</text>\n";

  // Frame
  out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333333\"/>\n";

  // Ticks + grid
  for (const double tv : x_axis.ticks()) {
    const double ux = x_axis.unit(tv);
    if (!(ux >= -1e-9 && ux <= 1.0 + 1e-9)) continue;
    const double px = to_px(ux);
    out << "<line x1=\"" << px << "\" y1=\"" << kMarginTop << "\" x2=\"" << px << "\" y2=\""
        << kMarginTop + plot_h << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << px << "\" y=\"" << kMarginTop + plot_h + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << tick_label(tv) << "</text>\n";
  }
  for (const double tv : y_axis.ticks()) {
    const double uy = y_axis.unit(tv);
    if (!(uy >= -1e-9 && uy <= 1.0 + 1e-9)) continue;
    const double py = to_py(uy);
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << py << "\" x2=\"" << kMarginLeft + plot_w
        << "\" y2=\"" << py << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << tick_label(tv)
        << "</text>\n";
  }

  // Axis labels
  out << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << escape(x_label) << (log_x ? " (log)" : "") << "</text>\n";
  out << "<text x=\"18\" y=\"" << kMarginTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << kMarginTop + plot_h / 2 << ")\">" << escape(y_label)
      << (log_y ? " (log)" : "") << "</text>\n";

  // Series
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % kPaletteSize];
    std::ostringstream pts;
    bool any = false;
    for (const auto& [px, py] : series[i].points) {
      const double ux = x_axis.unit(px);
      const double uy = y_axis.unit(py);
      if (std::isnan(ux) || std::isnan(uy) || !std::isfinite(ux) || !std::isfinite(uy)) continue;
      pts << cli::format_double(to_px(ux)) << ',' << cli::format_double(to_py(uy)) << ' ';
      any = true;
    }
    if (!any) continue;
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
        << pts.str() << "\"/>\n";
  }

  // Legend, top-right inside the frame
  double legend_y = kMarginTop + 16;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % kPaletteSize];
    const double lx = kMarginLeft + plot_w - 150;
    out << "<line x1=\"" << lx << "\" y1=\"" << legend_y - 4 << "\" x2=\"" << lx + 22 << "\" y2=\""
        << legend_y - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << lx + 28 << "\" y=\"" << legend_y
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(series[i].label)
        << "</text>\n";
    legend_y += 18;
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace qcost::svg
