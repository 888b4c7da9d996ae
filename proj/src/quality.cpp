#include "quadgrid/quality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace quadgrid {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;
const double kSqrt3 = std::sqrt(3.0);

std::array<Triangle, 4> corner_triangles(const Quad& q) {
  return {Triangle{q.d, q.a, q.b}, Triangle{q.a, q.b, q.c},
          Triangle{q.b, q.c, q.d}, Triangle{q.c, q.d, q.a}};
}

} // namespace

double tri_measure(const Triangle& t, TriangleMeasureKind kind) {
  if (t.degenerate()) return 0.0;
  const double area = t.area();
  const double sign = area >= 0.0 ? 1.0 : -1.0;
  const double abs_area = std::abs(area);
  const auto l = t.side_lengths();

  double value = 0.0;
  switch (kind) {
    case TriangleMeasureKind::Joe:
      value = 4.0 * kSqrt3 * abs_area / (l[0] * l[0] + l[1] * l[1] + l[2] * l[2]);
      break;
    case TriangleMeasureKind::RadiusRatio:
      value = 2.0 * t.inradius() / t.circumradius();
      break;
    case TriangleMeasureKind::Shewchuk: {
      const double r_circ = t.circumradius();
      value = (4.0 * kSqrt3 / 9.0) * abs_area / (r_circ * r_circ);
      break;
    }
    case TriangleMeasureKind::Cavendish: {
      const double lmax = t.longest_side();
      value = (4.0 / kSqrt3) * abs_area / (lmax * lmax);
      break;
    }
  }
  return sign * value;
}

double tri_measure_sigma(TriangleMeasureKind kind) {
  // 1 / mu(right isosceles with unit legs); the corner triangles of a square.
  static const Triangle right_isosceles{Point(0, 0), Point(1, 0), Point(0, 1)};
  return 1.0 / tri_measure(right_isosceles, kind);
}

std::vector<QuadMeasureKind> all_measure_kinds() {
  using F = QuadMeasureKind::Family;
  std::vector<QuadMeasureKind> kinds;
  for (F f : {F::RobinsonAR, F::MinrectAR, F::Lo, F::VanRens, F::Remacle, F::Wu,
              F::Minrect2015, F::Minrect2015MinTri, F::Rectangles2015}) {
    kinds.push_back({f, TriangleMeasureKind::Joe});
  }
  for (TriangleMeasureKind t :
       {TriangleMeasureKind::Joe, TriangleMeasureKind::RadiusRatio,
        TriangleMeasureKind::Shewchuk, TriangleMeasureKind::Cavendish}) {
    kinds.push_back({QuadMeasureKind::Family::HarmonicMean, t});
  }
  return kinds;
}

std::string measure_name(QuadMeasureKind kind) {
  using F = QuadMeasureKind::Family;
  switch (kind.family) {
    case F::RobinsonAR: return "robinson";
    case F::MinrectAR: return "minrect-ar";
    case F::Lo: return "lo";
    case F::VanRens: return "vanrens";
    case F::Remacle: return "remacle";
    case F::Wu: return "wu";
    case F::Minrect2015: return "minrect2015";
    case F::Minrect2015MinTri: return "minrect2015-min";
    case F::Rectangles2015: return "rectangles2015";
    case F::HarmonicMean:
      switch (kind.tri_kind) {
        case TriangleMeasureKind::Joe: return "harmonic-joe";
        case TriangleMeasureKind::RadiusRatio: return "harmonic-radius-ratio";
        case TriangleMeasureKind::Shewchuk: return "harmonic-shewchuk";
        case TriangleMeasureKind::Cavendish: return "harmonic-cavendish";
      }
  }
  return "unknown";
}

std::optional<QuadMeasureKind> parse_measure(std::string_view name) {
  for (const QuadMeasureKind& kind : all_measure_kinds()) {
    if (measure_name(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string measure_name_list() {
  std::string out;
  for (const QuadMeasureKind& kind : all_measure_kinds()) {
    if (!out.empty()) out += ", ";
    out += measure_name(kind);
  }
  return out;
}

double robinson_aspect_ratio(const Quad& q) {
  const BilinearCoeffs bc = bilinear_coeffs(q);
  const double e2 = bc.e[1], f3 = bc.f[2];
  const auto v = q.vertices();
  // 1e-14 * bbox diagonal, from the area-scaled threshold.
  const double tol_len = std::sqrt(degeneracy_threshold(v) * 1e-14);
  if (std::abs(e2) <= tol_len || std::abs(f3) <= tol_len) {
    throw DegenerateError("robinson aspect ratio: midpoint rectangle has a "
                          "vanishing axis-parallel side");
  }
  return std::max(std::abs(e2 / f3), std::abs(f3 / e2));
}

double minrect_aspect_ratio(const Quad& q) {
  const auto v = q.vertices();
  const std::vector<Point> hull = convex_hull(v);
  return min_area_rect(hull).aspect();
}

double lo_quality(const Quad& q) {
  std::array<double, 4> g{};
  const auto tris = corner_triangles(q);
  for (int k = 0; k < 4; ++k) {
    const auto l = tris[k].side_lengths();
    const double denom = l[0] * l[0] + l[1] * l[1] + l[2] * l[2];
    g[k] = denom > 0.0 ? 4.0 * kSqrt3 * tris[k].area() / denom : 0.0;
  }
  std::sort(g.begin(), g.end());
  const double denom = g[2] * g[3];
  if (std::abs(denom) < 1e-300) return 0.0;
  return g[0] * g[1] / denom;
}

double vanrens_quality(const Quad& q) {
  const auto angles = inner_angles(q);
  double product = 1.0;
  for (double theta : angles) {
    product *= 1.0 - std::abs((kPi / 2.0 - theta) / (kPi / 2.0));
  }
  return product;
}

double remacle_quality(const Quad& q) {
  const auto angles = inner_angles(q);
  double worst = 0.0;
  for (double theta : angles) {
    worst = std::max(worst, std::abs(kPi / 2.0 - theta));
  }
  return std::max(1.0 - (2.0 / kPi) * worst, 0.0);
}

double wu_quality(const Quad& q) {
  auto angles = inner_angles(q);
  std::sort(angles.begin(), angles.end());
  return angles[0] * angles[1] / (angles[2] * angles[3]);
}

double minrect_quality(const Quad& q) {
  const auto v = q.vertices();
  const double tol = degeneracy_threshold(v);
  if (min_corner_area(q) < -tol) {
    throw NonconvexError("minrect2015 measure is defined on convex cells");
  }
  const double cell_area = quad_area(q);
  const double rect_area = min_area_rect(convex_hull(v)).area();
  return (2.0 * cell_area - rect_area) / rect_area;
}

double minrect_min_triangle_quality(const Quad& q) {
  const auto v = q.vertices();
  const double rect_area = min_area_rect(convex_hull(v)).area();
  return 2.0 * min_corner_area(q) / rect_area;
}

namespace {

double rectangles2015_denominator(const Quad& q) {
  const auto s = q.side_lengths();
  const double denom =
      std::sqrt((s[0] * s[0] + s[2] * s[2]) * (s[1] * s[1] + s[3] * s[3]));
  if (denom <= 0.0) throw DegenerateError("rectangles2015: all sides are zero");
  return denom;
}

} // namespace

double rectangles2015_quality(const Quad& q) {
  const double value = 4.0 * min_corner_area(q) / rectangles2015_denominator(q);
  return std::max(value, 0.0);
}

double rectangles2015_quality_printed(const Quad& q) {
  return 2.0 * min_corner_area(q) / rectangles2015_denominator(q);
}

double harmonic_mean_quality(const Quad& q, TriangleMeasureKind kind) {
  const auto tris = corner_triangles(q);
  std::array<double, 4> mu{};
  double mu_min = 1.0;
  for (int k = 0; k < 4; ++k) {
    mu[k] = tri_measure(tris[k], kind);
    mu_min = std::min(mu_min, mu[k]);
  }
  // Degenerate or inverted corner: the harmonic mean loses its bound (the
  // reciprocal sum can cross zero), so report the worst triangle instead;
  // both branches meet continuously at 0.
  if (mu_min <= 0.0) return mu_min;
  const double reciprocal_sum = 1.0 / mu[0] + 1.0 / mu[1] + 1.0 / mu[2] + 1.0 / mu[3];
  return tri_measure_sigma(kind) * 4.0 / reciprocal_sum;
}

double eval_measure(const Quad& q, QuadMeasureKind kind) {
  using F = QuadMeasureKind::Family;
  switch (kind.family) {
    case F::RobinsonAR: return robinson_aspect_ratio(q);
    case F::MinrectAR: return minrect_aspect_ratio(q);
    case F::Lo: return lo_quality(q);
    case F::VanRens: return vanrens_quality(q);
    case F::Remacle: return remacle_quality(q);
    case F::Wu: return wu_quality(q);
    case F::Minrect2015: return minrect_quality(q);
    case F::Minrect2015MinTri: return minrect_min_triangle_quality(q);
    case F::Rectangles2015: return rectangles2015_quality(q);
    case F::HarmonicMean: return harmonic_mean_quality(q, kind.tri_kind);
  }
  throw ConfigError("unknown measure kind");
}

double grid_distortion(const StructuredGrid& g, QuadMeasureKind kind) {
  std::vector<std::pair<int, int>> bad;
  double sum = 0.0;
  for (int j = 0; j + 1 < g.rows(); ++j) {
    for (int i = 0; i + 1 < g.cols(); ++i) {
      double mu = 0.0;
      bool ok = true;
      try {
        mu = eval_measure(g.cell(i, j), kind);
      } catch (const Error&) {
        ok = false;
      }
      if (!ok || mu <= 0.0) {
        bad.emplace_back(i, j);
        continue;
      }
      sum += 1.0 / mu;
    }
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "grid not admissible for measure '" << measure_name(kind) << "': " << bad.size()
        << " cell(s) with mu <= 0:";
    for (size_t k = 0; k < bad.size() && k < 8; ++k) {
      msg << " (" << bad[k].first << ',' << bad[k].second << ')';
    }
    if (bad.size() > 8) msg << " ...";
    throw MeasureError(msg.str());
  }
  return sum / g.cell_count();
}

} // namespace quadgrid
