#include "quadgrid/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace quadgrid {

namespace {

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double eval_cell_or_rethrow(const StructuredGrid& g, int i, int j, QuadMeasureKind kind) {
  try {
    return eval_measure(g.cell(i, j), kind);
  } catch (const Error& e) {
    std::ostringstream msg;
    msg << "measure '" << measure_name(kind) << "' failed at cell (" << i << ',' << j
        << "): " << e.what();
    throw MeasureError(msg.str());
  }
}

} // namespace

QualityStats quality_stats(const StructuredGrid& g, QuadMeasureKind kind, double threshold) {
  QualityStats stats;
  stats.measure = kind;
  stats.threshold = threshold;
  stats.min = std::numeric_limits<double>::infinity();
  stats.max = -stats.min;

  double sum = 0.0;
  for (int j = 0; j + 1 < g.rows(); ++j) {
    for (int i = 0; i + 1 < g.cols(); ++i) {
      const double v = eval_cell_or_rethrow(g, i, j, kind);
      stats.min = std::min(stats.min, v);
      stats.max = std::max(stats.max, v);
      sum += v;
      if (v < threshold) ++stats.below_threshold_count;

      // right-open bins over [0,1], last bin closed; out-of-range values go
      // to the nearest end bin so counts always sum to Ne
      const int bin = std::clamp(static_cast<int>(std::floor(v * 20.0)), 0, 19);
      ++stats.histogram[bin];
    }
  }
  stats.mean = sum / g.cell_count();
  return stats;
}

void ColorMapSpec::validate() const {
  if (stops.size() < 2) throw ConfigError("palette needs at least 2 stops");
  if (stops.front().first != 0.0 || stops.back().first != 1.0) {
    throw ConfigError("palette must start at 0 and end at 1");
  }
  for (size_t k = 1; k < stops.size(); ++k) {
    if (!(stops[k - 1].first < stops[k].first)) {
      throw ConfigError("palette stop values must be strictly increasing");
    }
  }
  if (!(clamp_range[0] < clamp_range[1])) {
    throw ConfigError("clamp range must be nonempty");
  }
}

std::array<int, 3> ColorMapSpec::color_at(double value) const {
  const double v = std::clamp(value, 0.0, 1.0);
  size_t k = 1;
  while (k + 1 < stops.size() && stops[k].first < v) ++k;
  const auto& [v0, c0] = stops[k - 1];
  const auto& [v1, c1] = stops[k];
  const double t = (v - v0) / (v1 - v0);
  std::array<int, 3> c{};
  for (int ch = 0; ch < 3; ++ch) {
    c[ch] = static_cast<int>(std::lround(c0[ch] + t * (c1[ch] - c0[ch])));
  }
  return c;
}

ColorMapSpec ColorMapSpec::default_spec() {
  ColorMapSpec spec;
  spec.stops = {{0.0, {0, 0, 255}},
                {0.25, {0, 255, 255}},
                {0.5, {0, 200, 0}},
                {0.75, {255, 255, 0}},
                {1.0, {255, 0, 0}}};
  return spec;
}

std::string colormap_svg(const StructuredGrid& g, QuadMeasureKind kind,
                         const ColorMapSpec& spec) {
  spec.validate();

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const Point& p : g.nodes()) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double w = xmax - xmin, h = ymax - ymin;
  const double margin = 0.02 * std::max(w, h);
  const double legend_x = xmax + margin + 0.04 * w;
  const double legend_w = 0.05 * w;
  const double view_x = xmin - margin;
  const double view_y = ymin - margin;
  const double view_w = w + 2 * margin + 0.22 * w;
  const double view_h = h + 2 * margin;
  const auto flip = [&](double y) { return ymax + ymin - y; }; // SVG y points down

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
      << fmt6(view_x) << ' ' << fmt6(view_y) << ' ' << fmt6(view_w) << ' ' << fmt6(view_h)
      << "\">\n";
  svg << "<title>" << measure_name(kind) << "</title>\n";

  svg << "<defs>\n<linearGradient id=\"legend\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">\n";
  for (const auto& [v, c] : spec.stops) {
    svg << "<stop offset=\"" << fmt6(v) << "\" stop-color=\"rgb(" << c[0] << ',' << c[1]
        << ',' << c[2] << ")\"/>\n";
  }
  svg << "</linearGradient>\n</defs>\n";

  for (int j = 0; j + 1 < g.rows(); ++j) {
    for (int i = 0; i + 1 < g.cols(); ++i) {
      const double v = eval_cell_or_rethrow(g, i, j, kind);
      const double t =
          (v - spec.clamp_range[0]) / (spec.clamp_range[1] - spec.clamp_range[0]);
      // inverted / nonconvex cells get the designated out-of-range color,
      // even when the measure clamps the value into [0,1]
      const bool flagged = t < 0.0 || t > 1.0 || min_corner_area(g.cell(i, j)) < 0.0;
      const std::array<int, 3> c = flagged ? spec.out_of_range : spec.color_at(t);
      const Quad q = g.cell(i, j);
      svg << "<polygon points=\"";
      bool first = true;
      for (const Point& p : q.vertices()) {
        if (!first) svg << ' ';
        svg << fmt6(p.x) << ',' << fmt6(flip(p.y));
        first = false;
      }
      svg << "\" fill=\"rgb(" << c[0] << ',' << c[1] << ',' << c[2]
          << ")\" stroke=\"black\" stroke-width=\"" << fmt6(0.002 * std::max(w, h))
          << "\"/>\n";
    }
  }

  svg << "<rect x=\"" << fmt6(legend_x) << "\" y=\"" << fmt6(ymin) << "\" width=\""
      << fmt6(legend_w) << "\" height=\"" << fmt6(h)
      << "\" fill=\"url(#legend)\" stroke=\"black\" stroke-width=\""
      << fmt6(0.002 * std::max(w, h)) << "\"/>\n";
  const double font = 0.045 * h;
  const double label_x = legend_x + legend_w + 0.01 * w;
  const double lo = spec.clamp_range[0], hi = spec.clamp_range[1];
  svg << "<text x=\"" << fmt6(label_x) << "\" y=\"" << fmt6(ymin + font)
      << "\" font-size=\"" << fmt6(font) << "\">" << fmt6(hi) << "</text>\n";
  svg << "<text x=\"" << fmt6(label_x) << "\" y=\"" << fmt6(ymin + 0.5 * h + 0.5 * font)
      << "\" font-size=\"" << fmt6(font) << "\">" << fmt6(0.5 * (lo + hi)) << "</text>\n";
  svg << "<text x=\"" << fmt6(label_x) << "\" y=\"" << fmt6(ymax)
      << "\" font-size=\"" << fmt6(font) << "\">" << fmt6(lo) << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

} // namespace quadgrid
