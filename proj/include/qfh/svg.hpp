#ifndef QFH_SVG_HPP
#define QFH_SVG_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

namespace qfh {

// Self-contained SVG renderers so figure output needs no plotting dependency.

struct SvgAxisLabels {
  std::string x, y, title;
};

// column-major heatmap of |values| with a viridis-like ramp; x/y extents in
// the caller's units
std::string svg_heatmap(const Eigen::MatrixXd& values, double x_lo, double x_hi, double y_lo,
                        double y_hi, const SvgAxisLabels& labels);

struct SvgSeries {
  std::vector<double> x, y;
  std::string color = "#1f77b4";
  std::string name;
};

std::string svg_line_plot(const std::vector<SvgSeries>& series, const SvgAxisLabels& labels,
                          double y_lo = 0.0, double y_hi = 1.05);

}  // namespace qfh

#endif
