#include "arem/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace arem::plot {
namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 480;
constexpr double kLeft = 80;
constexpr double kRight = 150;
constexpr double kTop = 40;
constexpr double kBottom = 60;

const std::array<const char*, 7> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// Viridis-like ramp from dark blue through green to yellow.
std::string ramp(double t) {
  t = std::clamp(t, 0.0, 1.0);
  static const std::array<std::array<double, 3>, 5> stops{{{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  const double pos = t * (stops.size() - 1);
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(pos), stops.size() - 2);
  const double f = pos - static_cast<double>(i);
  std::ostringstream os;
  os << "rgb(";
  for (std::size_t c = 0; c < 3; ++c) {
    os << static_cast<int>(stops[i][c] + f * (stops[i + 1][c] - stops[i][c])) << (c < 2 ? "," : ")");
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write plot '" + path + "'");
  out << body;
}

void header(std::ostringstream& svg, const std::string& title, const std::string& x_label, const std::string& y_label) {
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n"
      << "<text x=\"" << kLeft + (kWidth - kLeft - kRight) / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\">" << x_label << "</text>\n"
      << "<text x=\"18\" y=\"" << kTop + (kHeight - kTop - kBottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << kTop + (kHeight - kTop - kBottom) / 2 << ")\">" << y_label << "</text>\n";
}

}  // namespace

void write_loglog_svg(const std::string& path, const std::string& title, const std::string& x_label,
                      const std::string& y_label, std::span<const Series> series) {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.points) {
      if (x <= 0 || y <= 0) continue;
      xmin = std::min(xmin, std::log10(x));
      xmax = std::max(xmax, std::log10(x));
      ymin = std::min(ymin, std::log10(y));
      ymax = std::max(ymax, std::log10(y));
    }
  }
  if (!(xmax >= xmin) || !(ymax >= ymin)) throw std::invalid_argument("log-log plot has no positive points");
  xmin = std::floor(xmin);
  xmax = std::max(std::ceil(xmax), xmin + 1);
  ymin = std::floor(ymin);
  ymax = std::max(std::ceil(ymax), ymin + 1);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (std::log10(x) - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return kTop + ph - (std::log10(y) - ymin) / (ymax - ymin) * ph; };

  std::ostringstream svg;
  header(svg, title, x_label, y_label);
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double e = xmin; e <= xmax; e += 1) {
    const double x = kLeft + (e - xmin) / (xmax - xmin) * pw;
    svg << "<line x1=\"" << x << "\" y1=\"" << kTop << "\" x2=\"" << x << "\" y2=\"" << kTop + ph
        << "\" stroke=\"#ddd\"/><text x=\"" << x << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"middle\">1e"
        << e << "</text>\n";
  }
  for (double e = ymin; e <= ymax; e += 1) {
    const double y = kTop + ph - (e - ymin) / (ymax - ymin) * ph;
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + pw << "\" y2=\"" << y
        << "\" stroke=\"#ddd\"/><text x=\"" << kLeft - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << e
        << "</text>\n";
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % kPalette.size()];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : series[s].points) {
      if (x > 0 && y > 0) svg << px(x) << ',' << py(y) << ' ';
    }
    svg << "\"/>\n";
    const double ly = kTop + 14 + 18 * static_cast<double>(s);
    svg << "<line x1=\"" << kWidth - kRight + 10 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - kRight + 30 << "\" y2=\""
        << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/><text x=\"" << kWidth - kRight + 34 << "\" y=\""
        << ly + 4 << "\">" << series[s].label << "</text>\n";
  }
  svg << "</svg>\n";
  write_file(path, svg.str());
}

void write_heatmap_svg(const std::string& path, const std::string& title, const std::string& x_label,
                       const std::string& y_label, std::span<const double> xs, std::span<const double> ys,
                       std::span<const double> values, double reference) {
  if (xs.empty() || ys.empty() || values.size() != xs.size() * ys.size()) {
    throw std::invalid_argument("heatmap dimensions do not match the value count");
  }
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -vmin;
  for (double v : values) {
    if (v > 0) {
      vmin = std::min(vmin, std::log10(v));
      vmax = std::max(vmax, std::log10(v));
    }
  }
  if (!(vmax >= vmin)) {
    vmin = 0;
    vmax = 1;
  }
  const double span = std::max(vmax - vmin, 1e-12);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const double cw = pw / static_cast<double>(xs.size());
  const double ch = ph / static_cast<double>(ys.size());

  std::ostringstream svg;
  header(svg, title, x_label, y_label);
  for (std::size_t ix = 0; ix < xs.size(); ++ix) {
    for (std::size_t iy = 0; iy < ys.size(); ++iy) {
      const double v = values[ix * ys.size() + iy];
      const double t = v > 0 ? (std::log10(v) - vmin) / span : 0.0;
      const double x = kLeft + cw * static_cast<double>(ix);
      const double y = kTop + ph - ch * static_cast<double>(iy + 1);
      svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cw << "\" height=\"" << ch << "\" fill=\""
          << ramp(t) << "\"" << (v > reference ? " stroke=\"white\" stroke-width=\"0.8\"" : "") << "/>\n";
    }
  }
  const std::size_t xstep = std::max<std::size_t>(1, xs.size() / 6);
  for (std::size_t ix = 0; ix < xs.size(); ix += xstep) {
    svg << "<text x=\"" << kLeft + cw * (static_cast<double>(ix) + 0.5) << "\" y=\"" << kTop + ph + 16
        << "\" text-anchor=\"middle\">" << fmt(xs[ix]) << "</text>\n";
  }
  const std::size_t ystep = std::max<std::size_t>(1, ys.size() / 6);
  for (std::size_t iy = 0; iy < ys.size(); iy += ystep) {
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + ph - ch * (static_cast<double>(iy) + 0.5) + 4
        << "\" text-anchor=\"end\">" << fmt(ys[iy]) << "</text>\n";
  }
  for (int s = 0; s <= 4; ++s) {
    const double t = s / 4.0;
    const double y = kTop + ph - t * ph * 0.6;
    svg << "<rect x=\"" << kWidth - kRight + 14 << "\" y=\"" << y - 12 << "\" width=\"16\" height=\"12\" fill=\""
        << ramp(t) << "\"/><text x=\"" << kWidth - kRight + 36 << "\" y=\"" << y - 2 << "\">" << fmt(std::pow(10.0, vmin + t * span))
        << "</text>\n";
  }
  svg << "<text x=\"" << kWidth - kRight + 14 << "\" y=\"" << kTop + 10 << "\">outlined: &gt; " << fmt(reference)
      << "</text>\n</svg>\n";
  write_file(path, svg.str());
}

}  // namespace arem::plot
