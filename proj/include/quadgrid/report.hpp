#ifndef QUADGRID_REPORT_HPP
#define QUADGRID_REPORT_HPP

#include <array>
#include <string>
#include <vector>

#include "quadgrid/grid.hpp"
#include "quadgrid/quality.hpp"

namespace quadgrid {

/// Per-grid summary of one quality measure. Histogram bins are 20 equal
/// widths over [0,1], right-open except the last; out-of-range values land
/// in the nearest end bin.
struct QualityStats {
  QuadMeasureKind measure;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  std::array<int, 20> histogram{};
  int below_threshold_count = 0;
  double threshold = 0.0;
};

QualityStats quality_stats(const StructuredGrid& g, QuadMeasureKind kind, double threshold);

/// Piecewise-linear color palette over [0,1]; measure values are mapped
/// through clamp_range first, and cells falling outside it (inverted or
/// flagged nonconvex) get the out_of_range color.
struct ColorMapSpec {
  std::vector<std::pair<double, std::array<int, 3>>> stops;
  std::array<double, 2> clamp_range{0.0, 1.0};
  std::array<int, 3> out_of_range{128, 128, 128};

  void validate() const; // throws ConfigError
  std::array<int, 3> color_at(double value) const;

  /// Blue -> cyan -> green -> yellow -> red over [0, 1].
  static ColorMapSpec default_spec();
};

/// SVG 1.1 document with one polygon per cell colored by the measure, plus a
/// legend bar. Deterministic text output; coordinates use 6 significant
/// digits.
std::string colormap_svg(const StructuredGrid& g, QuadMeasureKind kind,
                         const ColorMapSpec& spec);

} // namespace quadgrid

#endif
