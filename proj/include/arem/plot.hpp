#pragma once

// Minimal SVG charts for sweep outputs. Plots are derived artifacts; the CSV
// files are the data of record.

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace arem::plot {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// Log-log line chart. Non-positive points are skipped.
void write_loglog_svg(const std::string& path, const std::string& title, const std::string& x_label,
                      const std::string& y_label, std::span<const Series> series);

/// Heatmap of values[ix * ys.size() + iy] on a cell grid, colored by log10 of
/// the value. Cells above `reference` are outlined, which traces the
/// reference contour (e.g. q_eff / q = 1).
void write_heatmap_svg(const std::string& path, const std::string& title, const std::string& x_label,
                       const std::string& y_label, std::span<const double> xs, std::span<const double> ys,
                       std::span<const double> values, double reference);

}  // namespace arem::plot
