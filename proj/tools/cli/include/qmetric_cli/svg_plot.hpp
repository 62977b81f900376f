#pragma once

#include <optional>
#include <span>
#include <string>

namespace qmetric::cli {

struct PlotPoint {
  enum class Kind { circle, cross, dot };
  double x = 0.0;
  double y = 0.0;
  Kind kind = Kind::circle;
};

struct PlotOptions {
  std::string title;
  std::string x_label = "D_psi";
  std::string y_label = "D_n";
  std::optional<double> slope;  // draws y = slope * x when set
};

/// Standalone SVG scatter plot. Every point becomes one element with
/// class="mark"; the fitted line has class="fit".
std::string render_scatter_svg(std::span<const PlotPoint> points, const PlotOptions& options);

}  // namespace qmetric::cli
