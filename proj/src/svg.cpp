#include "qfh/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qfh {

namespace {

constexpr int plot_w = 640, plot_h = 480, margin = 56;

std::string ramp_color(double t) {
  // compact viridis-like ramp
  struct P {
    double t, r, g, b;
  };
  static const P stops[] = {{0.0, 68, 1, 84},    {0.25, 59, 82, 139},  {0.5, 33, 145, 140},
                            {0.75, 94, 201, 98}, {1.0, 253, 231, 37}};
  t = std::clamp(t, 0.0, 1.0);
  for (int i = 0; i < 4; ++i) {
    if (t <= stops[i + 1].t) {
      const double u = (t - stops[i].t) / (stops[i + 1].t - stops[i].t);
      const int r = static_cast<int>(stops[i].r + u * (stops[i + 1].r - stops[i].r));
      const int g = static_cast<int>(stops[i].g + u * (stops[i + 1].g - stops[i].g));
      const int b = static_cast<int>(stops[i].b + u * (stops[i + 1].b - stops[i].b));
      std::ostringstream os;
      os << "rgb(" << r << "," << g << "," << b << ")";
      return os.str();
    }
  }
  return "rgb(253,231,37)";
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void open_svg(std::ostringstream& os) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot_w << "\" height=\"" << plot_h
     << "\" viewBox=\"0 0 " << plot_w << " " << plot_h << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void axes_and_labels(std::ostringstream& os, double x_lo, double x_hi, double y_lo, double y_hi,
                     const SvgAxisLabels& labels) {
  os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << plot_w - 2 * margin
     << "\" height=\"" << plot_h - 2 * margin
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = margin + k * (plot_w - 2.0 * margin) / 4.0;
    const double fy = plot_h - margin + 16;
    os << "<text x=\"" << fx << "\" y=\"" << fy
       << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(x_lo + k * (x_hi - x_lo) / 4.0)
       << "</text>\n";
    const double gy = plot_h - margin - k * (plot_h - 2.0 * margin) / 4.0;
    os << "<text x=\"" << margin - 6 << "\" y=\"" << gy + 4
       << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(y_lo + k * (y_hi - y_lo) / 4.0)
       << "</text>\n";
  }
  os << "<text x=\"" << plot_w / 2 << "\" y=\"" << plot_h - 12
     << "\" font-size=\"13\" text-anchor=\"middle\">" << labels.x << "</text>\n";
  os << "<text x=\"16\" y=\"" << plot_h / 2
     << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << plot_h / 2
     << ")\">" << labels.y << "</text>\n";
  os << "<text x=\"" << plot_w / 2 << "\" y=\"" << margin - 12
     << "\" font-size=\"14\" text-anchor=\"middle\">" << labels.title << "</text>\n";
}

}  // namespace

std::string svg_heatmap(const Eigen::MatrixXd& values, double x_lo, double x_hi, double y_lo,
                        double y_hi, const SvgAxisLabels& labels) {
  std::ostringstream os;
  open_svg(os);
  const double vmax = values.maxCoeff();
  const int nx = static_cast<int>(values.rows());
  const int ny = static_cast<int>(values.cols());
  // cap the cell count so files stay small
  const int sx = std::max(1, nx / 256), sy = std::max(1, ny / 256);
  const double w = (plot_w - 2.0 * margin), h = (plot_h - 2.0 * margin);
  for (int a = 0; a < nx; a += sx) {
    for (int b = 0; b < ny; b += sy) {
      double block = 0.0;
      for (int da = 0; da < sx && a + da < nx; ++da)
        for (int db = 0; db < sy && b + db < ny; ++db)
          block = std::max(block, values(a + da, b + db));
      const double px = margin + w * a / nx;
      const double py = plot_h - margin - h * (b + sy) / ny;
      os << "<rect x=\"" << fmt(px) << "\" y=\"" << fmt(py) << "\" width=\""
         << fmt(w * sx / nx + 0.5) << "\" height=\"" << fmt(h * sy / ny + 0.5) << "\" fill=\""
         << ramp_color(vmax > 0 ? block / vmax : 0.0) << "\"/>\n";
    }
  }
  axes_and_labels(os, x_lo, x_hi, y_lo, y_hi, labels);
  os << "</svg>\n";
  return os.str();
}

std::string svg_line_plot(const std::vector<SvgSeries>& series, const SvgAxisLabels& labels,
                          double y_lo, double y_hi) {
  double x_lo = 0.0, x_hi = 1.0;
  bool first = true;
  for (const auto& s : series)
    for (double x : s.x) {
      if (first) {
        x_lo = x_hi = x;
        first = false;
      }
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
    }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;

  std::ostringstream os;
  open_svg(os);
  const double w = (plot_w - 2.0 * margin), h = (plot_h - 2.0 * margin);
  int legend_y = margin + 14;
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      const double px = margin + w * (s.x[k] - x_lo) / (x_hi - x_lo);
      const double py = plot_h - margin - h * std::clamp((s.y[k] - y_lo) / (y_hi - y_lo), 0.0, 1.0);
      os << fmt(px) << "," << fmt(py) << " ";
    }
    os << "\"/>\n";
    if (!s.name.empty()) {
      os << "<text x=\"" << plot_w - margin - 4 << "\" y=\"" << legend_y
         << "\" font-size=\"11\" text-anchor=\"end\" fill=\"" << s.color << "\">" << s.name
         << "</text>\n";
      legend_y += 14;
    }
  }
  axes_and_labels(os, x_lo, x_hi, y_lo, y_hi, labels);
  os << "</svg>\n";
  return os.str();
}

}  // namespace qfh
