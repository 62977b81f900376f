#include "qmetric_cli/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmetric/io.hpp"

namespace qmetric::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Rounds an axis maximum up to 1, 2 or 5 times a power of ten.
double nice_ceiling(double value) {
  if (!(value > 0.0)) return 1.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(value)));
  for (double step : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (step * magnitude >= value) return step * magnitude;
  }
  return 10.0 * magnitude;
}

std::string num(double v) {
  return io::format_number(std::round(v * 100.0) / 100.0);
}

}  // namespace

std::string render_scatter_svg(std::span<const PlotPoint> points, const PlotOptions& options) {
  double x_max = 0.0;
  double y_max = 0.0;
  for (const auto& p : points) {
    x_max = std::max(x_max, p.x);
    y_max = std::max(y_max, p.y);
  }
  x_max = nice_ceiling(x_max * 1.05);
  y_max = nice_ceiling(y_max * 1.05);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + plot_w * x / x_max; };
  auto sy = [&](double y) { return kTop + plot_h * (1.0 - y / y_max); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<defs><clipPath id=\"plot-area\"><rect x=\"" << kLeft << "\" y=\"" << kTop
      << "\" width=\"" << plot_w << "\" height=\"" << plot_h << "\"/></clipPath></defs>\n";
  if (!options.title.empty()) {
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << escape(options.title) << "</text>\n";
  }

  svg << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << sy(0) << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << sy(0) << "\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << sy(0) << "\" x2=\"" << kLeft << "\" y2=\"" << kTop
      << "\"/>\n";
  constexpr int kTicks = 5;
  for (int t = 0; t <= kTicks; ++t) {
    const double xv = x_max * t / kTicks;
    const double yv = y_max * t / kTicks;
    svg << "<line x1=\"" << num(sx(xv)) << "\" y1=\"" << sy(0) << "\" x2=\"" << num(sx(xv))
        << "\" y2=\"" << sy(0) + 5 << "\"/>\n"
        << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(sy(yv)) << "\" x2=\"" << kLeft
        << "\" y2=\"" << num(sy(yv)) << "\"/>\n";
  }
  svg << "</g>\n<g class=\"tick-labels\" font-size=\"12\">\n";
  for (int t = 0; t <= kTicks; ++t) {
    const double xv = x_max * t / kTicks;
    const double yv = y_max * t / kTicks;
    svg << "<text x=\"" << num(sx(xv)) << "\" y=\"" << sy(0) + 20
        << "\" text-anchor=\"middle\">" << io::format_number(xv) << "</text>\n"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(sy(yv) + 4)
        << "\" text-anchor=\"end\">" << io::format_number(yv) << "</text>\n";
  }
  svg << "</g>\n"
      << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(options.x_label) << "</text>\n"
      << "<text x=\"18\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" font-size=\"14\""
      << " transform=\"rotate(-90 18 " << kTop + plot_h / 2 << ")\">" << escape(options.y_label)
      << "</text>\n";

  if (options.slope) {
    svg << "<line class=\"fit\" clip-path=\"url(#plot-area)\" stroke=\"black\" "
        << "stroke-dasharray=\"6 4\" x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\""
        << num(sx(x_max)) << "\" y2=\"" << num(sy(*options.slope * x_max)) << "\"/>\n"
        << "<text x=\"" << kLeft + plot_w - 4 << "\" y=\"" << kTop + 14
        << "\" text-anchor=\"end\" font-size=\"12\">y = " << io::format_number(std::round(*options.slope * 1000.0) / 1000.0)
        << " x</text>\n";
  }

  svg << "<g class=\"points\">\n";
  for (const auto& p : points) {
    const std::string cx = num(sx(p.x));
    const std::string cy = num(sy(p.y));
    switch (p.kind) {
      case PlotPoint::Kind::circle:
        svg << "<circle class=\"mark\" cx=\"" << cx << "\" cy=\"" << cy
            << "\" r=\"3.5\" fill=\"none\" stroke=\"#1f4e9c\"/>\n";
        break;
      case PlotPoint::Kind::dot:
        svg << "<circle class=\"mark\" cx=\"" << cx << "\" cy=\"" << cy
            << "\" r=\"1.2\" fill=\"#c0392b\"/>\n";
        break;
      case PlotPoint::Kind::cross: {
        const double x = sx(p.x);
        const double y = sy(p.y);
        svg << "<path class=\"mark\" stroke=\"black\" stroke-width=\"1.5\" d=\"M" << num(x - 5)
            << ' ' << num(y - 5) << " L" << num(x + 5) << ' ' << num(y + 5) << " M" << num(x - 5)
            << ' ' << num(y + 5) << " L" << num(x + 5) << ' ' << num(y - 5) << "\"/>\n";
        break;
      }
    }
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace qmetric::cli
