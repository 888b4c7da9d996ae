#ifndef QUADGRID_GEOMETRY_HPP
#define QUADGRID_GEOMETRY_HPP

#include <array>
#include <span>
#include <vector>

#include "quadgrid/error.hpp"

namespace quadgrid {

/// Planar point / vector. Construction rejects non-finite coordinates.
struct Point {
  double x = 0.0;
  double y = 0.0;

  Point() = default;
  Point(double px, double py);
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline Point operator*(Point p, double s) { return {s * p.x, s * p.y}; }
inline Point operator/(Point p, double s) { return {p.x / s, p.y / s}; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point p);
double dist(Point a, Point b);
/// Counterclockwise perpendicular.
inline Point perp(Point p) { return {-p.y, p.x}; }

/// Half the cross product of (p1-p0) and (p2-p0); positive iff p0,p1,p2
/// turn counterclockwise.
double signed_area(Point p0, Point p1, Point p2);

/// Scale-relative degeneracy threshold: an area with magnitude at or below
/// 1e-14 * (bounding-box diagonal)^2 of the given points counts as zero.
double degeneracy_threshold(std::span<const Point> points);

struct Triangle {
  Point a, b, c;

  /// l1=|ab|, l2=|bc|, l3=|ca|.
  std::array<double, 3> side_lengths() const;
  double area() const; // signed
  double perimeter() const;
  double inradius() const;     // from |area|; 0 for degenerate input
  double circumradius() const; // +inf for degenerate input
  double longest_side() const;
  bool degenerate() const;
};

/// One quadrilateral cell with vertices labeled A,B,C,D in counterclockwise
/// order. Sides are a=|AB|, b=|BC|, c=|CD|, d=|DA|.
struct Quad {
  Point a, b, c, d;

  std::array<double, 4> side_lengths() const;
  std::array<Point, 4> vertices() const { return {a, b, c, d}; }
};

/// Shoelace area, counterclockwise positive. Throws DegenerateError on a
/// self-intersecting (bowtie) vertex cycle.
double quad_area(const Quad& q);

/// Signed areas of the corner triangles (D,A,B), (A,B,C), (B,C,D), (C,D,A);
/// all positive iff the quad is strictly convex.
std::array<double, 4> corner_triangle_areas(const Quad& q);

/// min(a_1..a_4) of corner_triangle_areas.
double min_corner_area(const Quad& q);

/// Interior angle at each vertex, in (0, 2*pi); reflex angles come out
/// greater than pi. Angles of a simple quad sum to 2*pi. Throws
/// DegenerateError on a zero-length side.
std::array<double, 4> inner_angles(const Quad& q);

/// True when no two opposite sides cross (adjacent sides share a vertex and
/// are ignored).
bool is_simple(const Quad& q);

/// Strict convexity: every corner triangle area exceeds the degeneracy
/// threshold.
bool is_convex(const Quad& q);

/// Minimal counterclockwise convex polygon containing all points; collinear
/// points on the hull boundary are dropped (same relative tolerance as
/// degeneracy_threshold). Throws DegenerateError when all points are
/// collinear and Error when fewer than 3 points are given.
std::vector<Point> convex_hull(std::span<const Point> points);

/// Rectangle with arbitrary orientation described by center, unit axis and
/// positive half extents along the axis and its perpendicular.
struct OrientedRectangle {
  Point center;
  Point axis; // unit direction of the h_u extent
  double half_u = 0.0;
  double half_v = 0.0;

  double area() const { return 4.0 * half_u * half_v; }
  double aspect() const;
  std::array<Point, 4> corners() const;
  bool contains(Point p, double tol) const;
};

/// Minimum-area enclosing rectangle of a counterclockwise convex polygon by
/// rotating calipers. One rectangle side is collinear with a polygon edge;
/// area ties are broken by the first edge in counterclockwise order. Throws
/// DegenerateError on zero-area input.
OrientedRectangle min_area_rect(std::span<const Point> polygon);

/// Coefficients of the bilinear map from the reference square [-1,1]^2 onto
/// a quad, with corners A<->(-1,-1), B<->(1,-1), C<->(1,1), D<->(-1,1):
///   x(xi,eta) = e1 + e2*xi + e3*eta + e4*xi*eta   (f's likewise for y).
/// 2|e2| and 2|f3| are the side lengths of the axis-parallel rectangle
/// through the side midpoints.
struct BilinearCoeffs {
  std::array<double, 4> e{}; // e[0] = e1, ...
  std::array<double, 4> f{};
};

BilinearCoeffs bilinear_coeffs(const Quad& q);
Point bilinear_eval(const BilinearCoeffs& bc, double xi, double eta);

} // namespace quadgrid

#endif
