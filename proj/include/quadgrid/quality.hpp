#ifndef QUADGRID_QUALITY_HPP
#define QUADGRID_QUALITY_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quadgrid/geometry.hpp"
#include "quadgrid/grid.hpp"

namespace quadgrid {

/// Normalized triangle shape measures, each 1 on equilateral triangles and
/// tending to 0 under degeneration. Values carry the sign of the triangle
/// orientation so inverted triangles come out negative.
enum class TriangleMeasureKind {
  Joe,         // 4*sqrt(3) * A / (l1^2 + l2^2 + l3^2)
  RadiusRatio, // 2 r / R
  Shewchuk,    // (4*sqrt(3)/9) * A / R^2
  Cavendish,   // (4/sqrt(3)) * A / l_max^2
};

/// Measure value in [-1, 1]; 0 for degenerate input (sentinel, not an error).
double tri_measure(const Triangle& t, TriangleMeasureKind kind);

/// Calibration constant for the harmonic-mean quad measure: the reciprocal
/// of the kind's value on a right isosceles triangle, so that squares score
/// exactly 1.
double tri_measure_sigma(TriangleMeasureKind kind);

/// Selector for every quadrilateral measure in the library. HarmonicMean
/// carries the triangle kind it averages.
struct QuadMeasureKind {
  enum class Family {
    RobinsonAR,        // midpoint-rectangle aspect ratio (axis dependent)
    MinrectAR,         // min-area-rectangle aspect ratio
    Lo,                // sorted corner-triangle shape product
    VanRens,           // inner-angle product
    Remacle,           // worst inner-angle deviation
    Wu,                // sorted inner-angle ratio
    Minrect2015,       // (2 a_c - a_R) / a_R
    Minrect2015MinTri, // 2 a_min / a_R
    Rectangles2015,    // 4 a_min / sqrt((a^2+c^2)(b^2+d^2))
    HarmonicMean,      // calibrated harmonic mean of corner-triangle measures
  };

  Family family = Family::Rectangles2015;
  TriangleMeasureKind tri_kind = TriangleMeasureKind::Joe;

  friend bool operator==(const QuadMeasureKind&, const QuadMeasureKind&) = default;
};

/// All selectable kinds (harmonic mean expanded over the four triangle kinds).
std::vector<QuadMeasureKind> all_measure_kinds();
std::string measure_name(QuadMeasureKind kind);
std::optional<QuadMeasureKind> parse_measure(std::string_view name);
/// Comma-separated list of valid names for diagnostics.
std::string measure_name_list();

/// Robinson's aspect ratio max{|e2/f3|, |f3/e2|} of the axis-parallel
/// rectangle through the side midpoints. Depends on the coordinate axes and
/// on which vertex the labeling starts at; the caller controls both. Throws
/// DegenerateError when e2 or f3 vanishes.
double robinson_aspect_ratio(const Quad& q);

/// Aspect ratio of the minimum-area enclosing rectangle (of the vertex hull
/// for nonconvex input). Invariant under rigid motions and uniform scaling.
double minrect_aspect_ratio(const Quad& q);

/// Lo: g_i = 4*sqrt(3)*area(T_i)/(sum of squared sides) on the four corner
/// triangles, sorted ascending; returns g1*g2/(g3*g4). 1 on rectangles,
/// <= 0 for nonconvex or degenerate cells.
double lo_quality(const Quad& q);

/// van Rens: prod_k (1 - |(pi/2 - theta_k)/(pi/2)|). 1 iff rectangle.
double vanrens_quality(const Quad& q);

/// Remacle: max{1 - (2/pi) max_k |pi/2 - theta_k|, 0}. 1 iff rectangle; 0
/// when any angle reaches pi.
double remacle_quality(const Quad& q);

/// Wu: theta1*theta2/(theta3*theta4) with sorted angles. 1 on rectangles but
/// blind to degeneration (kept for comparison).
double wu_quality(const Quad& q);

/// (2 a_c - a_R)/a_R in [0, 1]; 1 iff rectangle, 0 when the cell degenerates
/// to a triangle. Throws NonconvexError for (strictly) nonconvex input.
double minrect_quality(const Quad& q);

/// 2 a_min / a_R; in [0,1] for convex cells, <= 0 (signed) for nonconvex.
double minrect_min_triangle_quality(const Quad& q);

/// 4 a_min / sqrt((a^2+c^2)(b^2+d^2)), clamped at 0 for nonconvex input.
/// 1 iff rectangle; 0 iff degenerate-to-triangle.
double rectangles2015_quality(const Quad& q);

/// The same measure with the factor-2 normalization omitted (evaluates to
/// 1/2 on rectangles); kept for reference.
double rectangles2015_quality_printed(const Quad& q);

/// sigma * 4 / sum_i 1/mu(T_i) over the corner triangles, calibrated so
/// squares score exactly 1; at most 1 on convex cells. When some mu(T_i) is
/// zero or negative (degenerate or inverted corner) the minimum of the
/// triangle measures is returned instead, which is continuous at 0 and keeps
/// the value in [-1, 0] there.
double harmonic_mean_quality(const Quad& q, TriangleMeasureKind kind);

double eval_measure(const Quad& q, QuadMeasureKind kind);

/// Mean reciprocal quality over all cells (lower is better; 1 is optimal for
/// measures whose optimum is 1). Throws MeasureError naming the offending
/// cells when some cell has mu <= 0 or is not evaluable.
double grid_distortion(const StructuredGrid& g, QuadMeasureKind kind);

} // namespace quadgrid

#endif
