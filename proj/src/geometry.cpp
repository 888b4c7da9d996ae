#include "quadgrid/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace quadgrid {

namespace {

constexpr double kRelTol = 1e-14;

bool proper_cross(Point p, Point q, Point r, Point s) {
  const double o1 = signed_area(p, q, r);
  const double o2 = signed_area(p, q, s);
  const double o3 = signed_area(r, s, p);
  const double o4 = signed_area(r, s, q);
  return o1 * o2 < 0.0 && o3 * o4 < 0.0;
}

} // namespace

Point::Point(double px, double py) : x(px), y(py) {
  if (!std::isfinite(px) || !std::isfinite(py)) {
    throw Error("point coordinates must be finite");
  }
}

double norm(Point p) { return std::hypot(p.x, p.y); }
double dist(Point a, Point b) { return norm(b - a); }

double signed_area(Point p0, Point p1, Point p2) {
  return 0.5 * cross(p1 - p0, p2 - p0);
}

double degeneracy_threshold(std::span<const Point> points) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = xmax;
  for (const Point& p : points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double dx = xmax - xmin, dy = ymax - ymin;
  return kRelTol * (dx * dx + dy * dy);
}

std::array<double, 3> Triangle::side_lengths() const {
  return {dist(a, b), dist(b, c), dist(c, a)};
}

double Triangle::area() const { return signed_area(a, b, c); }

double Triangle::perimeter() const {
  const auto l = side_lengths();
  return l[0] + l[1] + l[2];
}

double Triangle::inradius() const {
  const double p = perimeter();
  return p > 0.0 ? 2.0 * std::abs(area()) / p : 0.0;
}

double Triangle::circumradius() const {
  const double abs_area = std::abs(area());
  if (abs_area <= 0.0) return std::numeric_limits<double>::infinity();
  const auto l = side_lengths();
  return l[0] * l[1] * l[2] / (4.0 * abs_area);
}

double Triangle::longest_side() const {
  const auto l = side_lengths();
  return std::max({l[0], l[1], l[2]});
}

bool Triangle::degenerate() const {
  const std::array<Point, 3> pts{a, b, c};
  return std::abs(area()) <= degeneracy_threshold(pts);
}

std::array<double, 4> Quad::side_lengths() const {
  return {dist(a, b), dist(b, c), dist(c, d), dist(d, a)};
}

double quad_area(const Quad& q) {
  if (!is_simple(q)) {
    throw DegenerateError("self-intersecting (bowtie) quadrilateral");
  }
  const auto t = corner_triangle_areas(q);
  return t[1] + t[3]; // shoelace via the diagonal AC split
}

std::array<double, 4> corner_triangle_areas(const Quad& q) {
  return {signed_area(q.d, q.a, q.b), signed_area(q.a, q.b, q.c),
          signed_area(q.b, q.c, q.d), signed_area(q.c, q.d, q.a)};
}

double min_corner_area(const Quad& q) {
  const auto t = corner_triangle_areas(q);
  return std::min({t[0], t[1], t[2], t[3]});
}

std::array<double, 4> inner_angles(const Quad& q) {
  const auto v = q.vertices();
  const double tol_len = std::sqrt(degeneracy_threshold(v));
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    total += cross(v[k], v[(k + 1) % 4]);
  }
  const double orient = total >= 0.0 ? 1.0 : -1.0;

  std::array<double, 4> angles{};
  for (int k = 0; k < 4; ++k) {
    const Point u = v[k] - v[(k + 3) % 4];
    const Point w = v[(k + 1) % 4] - v[k];
    if (norm(u) <= tol_len || norm(w) <= tol_len) {
      throw DegenerateError("zero-length side in quadrilateral");
    }
    const double turn = std::atan2(cross(u, w), dot(u, w));
    angles[k] = std::numbers::pi_v<double> - orient * turn;
  }
  return angles;
}

bool is_simple(const Quad& q) {
  return !proper_cross(q.a, q.b, q.c, q.d) && !proper_cross(q.b, q.c, q.d, q.a);
}

bool is_convex(const Quad& q) {
  const auto v = q.vertices();
  const double tol = degeneracy_threshold(v);
  const auto t = corner_triangle_areas(q);
  return std::min({t[0], t[1], t[2], t[3]}) > tol;
}

std::vector<Point> convex_hull(std::span<const Point> points) {
  if (points.size() < 3) {
    throw Error("convex hull needs at least 3 points");
  }
  const double tol = degeneracy_threshold(points);

  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Point a, Point b) { return a.x == b.x && a.y == b.y; }),
            pts.end());

  const auto build = [&](auto begin, auto end) {
    std::vector<Point> h;
    for (auto it = begin; it != end; ++it) {
      while (h.size() >= 2 && signed_area(h[h.size() - 2], h.back(), *it) <= tol) {
        h.pop_back();
      }
      h.push_back(*it);
    }
    return h;
  };

  std::vector<Point> lower = build(pts.begin(), pts.end());
  std::vector<Point> upper = build(pts.rbegin(), pts.rend());
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  if (lower.size() < 3) {
    throw DegenerateError("degenerate hull: all points collinear");
  }
  return lower;
}

double OrientedRectangle::aspect() const {
  const double lo = std::min(half_u, half_v);
  const double hi = std::max(half_u, half_v);
  if (lo <= 0.0) throw DegenerateError("degenerate rectangle");
  return hi / lo;
}

std::array<Point, 4> OrientedRectangle::corners() const {
  const Point v = perp(axis);
  return {center - half_u * axis - half_v * v, center + half_u * axis - half_v * v,
          center + half_u * axis + half_v * v, center - half_u * axis + half_v * v};
}

bool OrientedRectangle::contains(Point p, double tol) const {
  const Point r = p - center;
  return std::abs(dot(r, axis)) <= half_u + tol &&
         std::abs(dot(r, perp(axis))) <= half_v + tol;
}

OrientedRectangle min_area_rect(std::span<const Point> polygon) {
  const size_t n = polygon.size();
  if (n < 3) throw Error("min_area_rect needs a polygon with at least 3 vertices");

  double poly_area = 0.0;
  for (size_t i = 0; i < n; ++i) {
    poly_area += cross(polygon[i], polygon[(i + 1) % n]);
  }
  poly_area *= 0.5;
  if (poly_area <= degeneracy_threshold(polygon)) {
    throw DegenerateError("min_area_rect: polygon area is zero");
  }

  const auto proj_u = [&](size_t i, Point u) { return dot(polygon[i], u); };
  const auto next = [n](size_t i) { return (i + 1) % n; };

  // Extremes for the first edge direction; the indices then only advance as
  // the caliper rotates.
  Point u0 = polygon[1] - polygon[0];
  u0 = u0 / norm(u0);
  const Point v0 = perp(u0);
  size_t right = 0, top = 0, left = 0;
  for (size_t i = 1; i < n; ++i) {
    if (proj_u(i, u0) > proj_u(right, u0)) right = i;
    if (proj_u(i, v0) > proj_u(top, v0)) top = i;
    if (proj_u(i, u0) < proj_u(left, u0)) left = i;
  }

  bool have_best = false;
  OrientedRectangle best;
  double best_area = 0.0;

  for (size_t i = 0; i < n; ++i) {
    Point e = polygon[next(i)] - polygon[i];
    const double elen = norm(e);
    if (elen <= 0.0) continue;
    const Point u = e / elen;
    const Point v = perp(u);

    while (proj_u(next(right), u) > proj_u(right, u)) right = next(right);
    while (proj_u(next(top), v) > proj_u(top, v)) top = next(top);
    while (proj_u(next(left), u) < proj_u(left, u)) left = next(left);

    const double lo_u = proj_u(left, u), hi_u = proj_u(right, u);
    const double lo_v = proj_u(i, v), hi_v = proj_u(top, v);
    const double area = (hi_u - lo_u) * (hi_v - lo_v);
    if (!have_best || area < best_area) {
      have_best = true;
      best_area = area;
      best.axis = u;
      best.half_u = 0.5 * (hi_u - lo_u);
      best.half_v = 0.5 * (hi_v - lo_v);
      best.center = 0.5 * (hi_u + lo_u) * u + 0.5 * (hi_v + lo_v) * v;
    }
  }
  if (!have_best) throw DegenerateError("min_area_rect: no valid edge direction");
  return best;
}

BilinearCoeffs bilinear_coeffs(const Quad& q) {
  const double xa = q.a.x, xb = q.b.x, xc = q.c.x, xd = q.d.x;
  const double ya = q.a.y, yb = q.b.y, yc = q.c.y, yd = q.d.y;
  BilinearCoeffs bc;
  bc.e = {(xa + xb + xc + xd) / 4.0, (-xa + xb + xc - xd) / 4.0,
          (-xa - xb + xc + xd) / 4.0, (xa - xb + xc - xd) / 4.0};
  bc.f = {(ya + yb + yc + yd) / 4.0, (-ya + yb + yc - yd) / 4.0,
          (-ya - yb + yc + yd) / 4.0, (ya - yb + yc - yd) / 4.0};
  return bc;
}

Point bilinear_eval(const BilinearCoeffs& bc, double xi, double eta) {
  return {bc.e[0] + bc.e[1] * xi + bc.e[2] * eta + bc.e[3] * xi * eta,
          bc.f[0] + bc.f[1] * xi + bc.f[2] * eta + bc.f[3] * xi * eta};
}

} // namespace quadgrid
