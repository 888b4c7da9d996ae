#include "quadgrid/functionals.hpp"

#include <cmath>
#include <sstream>

namespace quadgrid {

namespace {

/// Accumulates per-node contributions into the packed interior-coordinate
/// layout; contributions to boundary nodes are dropped.
class InteriorGradient {
public:
  explicit InteriorGradient(const StructuredGrid& g)
      : m_(g.cols()), n_(g.rows()), data_(2 * static_cast<size_t>(g.interior_count()), 0.0) {}

  void add(int i, int j, Point dp) {
    if (i <= 0 || j <= 0 || i >= m_ - 1 || j >= n_ - 1) return;
    const size_t s = 2 * (static_cast<size_t>(j - 1) * (m_ - 2) + (i - 1));
    data_[s] += dp.x;
    data_[s + 1] += dp.y;
  }

  void scale(double s) {
    for (double& v : data_) v *= s;
  }

  /// this += s * other
  void axpy(double s, const InteriorGradient& other) {
    for (size_t k = 0; k < data_.size(); ++k) data_[k] += s * other.data_[k];
  }

  std::vector<double> take() { return std::move(data_); }

private:
  int m_, n_;
  std::vector<double> data_;
};

double shoelace(Point a, Point b, Point c, Point d) {
  return 0.5 * (a.x * (b.y - d.y) + b.x * (c.y - a.y) + c.x * (d.y - b.y) +
                d.x * (a.y - c.y));
}

struct CellRect {
  double value;
  Point da, db, dc, dd;
};

/// f(Q) and its partials with respect to the four vertices.
CellRect rect_distortion_with_grad(Point a, Point b, Point c, Point d) {
  const Point ab = b - a, bc = c - b, cd = d - c, da = a - d;
  const double p = dot(ab, ab) + dot(cd, cd);
  const double q = dot(bc, bc) + dot(da, da);
  const double area = shoelace(a, b, c, d);
  const double inv = 1.0 / (4.0 * area * area);
  const double f = p * q * inv;

  // side vectors: cd = D-C and da = A-D, so the c^2 and d^2 partials carry
  // the opposite signs of the a^2 and b^2 ones
  const Point dp_a = -2.0 * ab, dp_b = 2.0 * ab, dp_c = -2.0 * cd, dp_d = 2.0 * cd;
  const Point dq_b = -2.0 * bc, dq_c = 2.0 * bc, dq_a = 2.0 * da, dq_d = -2.0 * da;
  const Point darea_a{0.5 * (b.y - d.y), 0.5 * (d.x - b.x)};
  const Point darea_b{0.5 * (c.y - a.y), 0.5 * (a.x - c.x)};
  const Point darea_c{0.5 * (d.y - b.y), 0.5 * (b.x - d.x)};
  const Point darea_d{0.5 * (a.y - c.y), 0.5 * (c.x - a.x)};

  const double s = -2.0 * f / area;
  CellRect out;
  out.value = f;
  out.da = inv * (q * dp_a + p * dq_a) + s * darea_a;
  out.db = inv * (q * dp_b + p * dq_b) + s * darea_b;
  out.dc = inv * (q * dp_c + p * dq_c) + s * darea_c;
  out.dd = inv * (q * dp_d + p * dq_d) + s * darea_d;
  return out;
}

/// Signed area of (p0,p1,p2) and its six partials, in p0,p1,p2 order.
void tri_area_grad(Point p0, Point p1, Point p2, Point grad[3]) {
  grad[0] = Point(0.5 * (p1.y - p2.y), 0.5 * (p2.x - p1.x));
  grad[1] = Point(0.5 * (p2.y - p0.y), 0.5 * (p0.x - p2.x));
  grad[2] = Point(0.5 * (p0.y - p1.y), 0.5 * (p1.x - p0.x));
}

[[noreturn]] void throw_cell_error(const char* what, int i, int j) {
  std::ostringstream msg;
  msg << what << " at cell (" << i << ',' << j << ')';
  throw FeasibilityError(msg.str());
}

} // namespace

void FunctionalConfig::validate() const {
  if (!(sigma >= 0.0 && sigma <= 1.0)) {
    throw ConfigError("sigma must lie in [0, 1]");
  }
  if (shape == ShapeKind::RectBlend) {
    if (alpha < 0.0 || beta < 0.0) throw ConfigError("alpha and beta must be nonnegative");
    if (alpha + beta <= 0.0) throw ConfigError("alpha and beta must not both be zero");
  }
  if ((shape == ShapeKind::Area || barrier == BarrierKind::Area) && !(delta > 0.0)) {
    throw ConfigError("delta must be positive");
  }
  if (eps < 0.0) throw ConfigError("eps must be nonnegative");
}

double cell_rect_distortion(const Quad& q) {
  const auto t = corner_triangle_areas(q);
  const double area = t[1] + t[3];
  if (area <= 0.0) throw FeasibilityError("cell area is not positive");
  return cell_area_orthogonality(q) / (4.0 * area * area);
}

double cell_area_orthogonality(const Quad& q) {
  const auto s = q.side_lengths();
  return (s[0] * s[0] + s[2] * s[2]) * (s[1] * s[1] + s[3] * s[3]);
}

Evaluation rect_functional(const StructuredGrid& g) {
  InteriorGradient grad(g);
  double value = 0.0;
  for (int j = 0; j + 1 < g.rows(); ++j) {
    for (int i = 0; i + 1 < g.cols(); ++i) {
      const Point a = g.at(i, j), b = g.at(i + 1, j), c = g.at(i + 1, j + 1),
                  d = g.at(i, j + 1);
      if (shoelace(a, b, c, d) <= 0.0) throw_cell_error("nonpositive cell area", i, j);
      const CellRect cr = rect_distortion_with_grad(a, b, c, d);
      value += cr.value;
      grad.add(i, j, cr.da);
      grad.add(i + 1, j, cr.db);
      grad.add(i + 1, j + 1, cr.dc);
      grad.add(i, j + 1, cr.dd);
    }
  }
  const double inv_ne = 1.0 / g.cell_count();
  grad.scale(inv_ne);
  return {value * inv_ne, grad.take()};
}

Evaluation parallelogram_functional(const StructuredGrid& g) {
  InteriorGradient grad(g);
  double value = 0.0;
  for (int j = 0; j + 1 < g.rows(); ++j) {
    for (int i = 0; i + 1 < g.cols(); ++i) {
      const Point s = g.at(i, j) - g.at(i + 1, j) + g.at(i + 1, j + 1) - g.at(i, j + 1);
      value += 0.25 * dot(s, s);
      grad.add(i, j, 0.5 * s);
      grad.add(i + 1, j, -0.5 * s);
      grad.add(i + 1, j + 1, 0.5 * s);
      grad.add(i, j + 1, -0.5 * s);
    }
  }
  return {value, grad.take()};
}

Evaluation diagonal_functional(const StructuredGrid& g) {
  InteriorGradient grad(g);
  double value = 0.0;
  for (int j = 0; j + 1 < g.rows(); ++j) {
    for (int i = 0; i + 1 < g.cols(); ++i) {
      const Point u = g.at(i, j) - g.at(i + 1, j + 1);
      const Point v = g.at(i + 1, j) - g.at(i, j + 1);
      const double e = dot(u, u) - dot(v, v);
      value += e * e;
      grad.add(i, j, 4.0 * e * u);
      grad.add(i + 1, j + 1, -4.0 * e * u);
      grad.add(i + 1, j, -4.0 * e * v);
      grad.add(i, j + 1, 4.0 * e * v);
    }
  }
  return {value, grad.take()};
}

Evaluation rect_blend_functional(const StructuredGrid& g, double alpha, double beta) {
  if (alpha < 0.0 || beta < 0.0 || alpha + beta <= 0.0) {
    throw ConfigError("F_r needs nonnegative weights, not both zero");
  }
  Evaluation p = parallelogram_functional(g);
  const Evaluation d = diagonal_functional(g);
  p.value = alpha * p.value + beta * d.value;
  for (size_t k = 0; k < p.gradient.size(); ++k) {
    p.gradient[k] = alpha * p.gradient[k] + beta * d.gradient[k];
  }
  return p;
}

Evaluation area_functional(const StructuredGrid& g, double delta) {
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");
  InteriorGradient grad(g);
  double value = 0.0;
  Point tg[3];
  for (int j = 0; j + 1 < g.rows(); ++j) {
    for (int i = 0; i + 1 < g.cols(); ++i) {
      const Point a = g.at(i, j), b = g.at(i + 1, j), c = g.at(i + 1, j + 1),
                  d = g.at(i, j + 1);
      const Point tri[4][3] = {{d, a, b}, {a, b, c}, {b, c, d}, {c, d, a}};
      const int vi[4][3] = {{3, 0, 1}, {0, 1, 2}, {1, 2, 3}, {2, 3, 0}};
      const int off[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; // A,B,C,D offsets
      for (int t = 0; t < 4; ++t) {
        const double area = signed_area(tri[t][0], tri[t][1], tri[t][2]);
        if (area == 0.0) throw_cell_error("zero triangle area", i, j);
        value += 1.0 / (area * area) + delta * area * area;
        const double coeff = -2.0 / (area * area * area) + 2.0 * delta * area;
        tri_area_grad(tri[t][0], tri[t][1], tri[t][2], tg);
        for (int v = 0; v < 3; ++v) {
          const int corner = vi[t][v];
          grad.add(i + off[corner][0], j + off[corner][1], coeff * tg[v]);
        }
      }
    }
  }
  return {value, grad.take()};
}

Evaluation barrier_functional(const StructuredGrid& g, double eps) {
  if (eps < 0.0) throw ConfigError("eps must be nonnegative");
  const std::vector<double> areas = triangle_areas(g);
  const size_t count = areas.size();
  const double inv_n = 1.0 / static_cast<double>(count);

  double mean = 0.0;
  for (double a : areas) mean += a;
  mean *= inv_n;

  double value = 0.0;
  double c1 = 0.0; // (1/N) sum alpha_q / beta_q^2
  for (size_t q = 0; q < count; ++q) {
    const double beta_q = areas[q] - eps * mean;
    if (beta_q <= 0.0) {
      const int cell = static_cast<int>(q / 4);
      const int cols = g.cols() - 1;
      throw_cell_error("barrier violation", cell % cols, cell / cols);
    }
    value += mean / beta_q;
    c1 += areas[q] / (beta_q * beta_q);
  }
  value *= inv_n;
  c1 *= inv_n;

  // dS/dv = c1 * d(mean)/dv - (1/N) sum_q mean / beta_q^2 * d(alpha_q)/dv
  InteriorGradient grad(g), mean_grad(g);
  Point tg[3];
  size_t q = 0;
  for (int j = 0; j + 1 < g.rows(); ++j) {
    for (int i = 0; i + 1 < g.cols(); ++i) {
      const Point a = g.at(i, j), b = g.at(i + 1, j), c = g.at(i + 1, j + 1),
                  d = g.at(i, j + 1);
      const Point tri[4][3] = {{d, a, b}, {a, b, c}, {b, c, d}, {c, d, a}};
      const int vi[4][3] = {{3, 0, 1}, {0, 1, 2}, {1, 2, 3}, {2, 3, 0}};
      const int off[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
      for (int t = 0; t < 4; ++t, ++q) {
        const double beta_q = areas[q] - eps * mean;
        const double coeff = -inv_n * mean / (beta_q * beta_q);
        tri_area_grad(tri[t][0], tri[t][1], tri[t][2], tg);
        for (int v = 0; v < 3; ++v) {
          const int corner = vi[t][v];
          grad.add(i + off[corner][0], j + off[corner][1], coeff * tg[v]);
          mean_grad.add(i + off[corner][0], j + off[corner][1], inv_n * tg[v]);
        }
      }
    }
  }
  grad.axpy(c1, mean_grad);
  return {value, grad.take()};
}

Evaluation combined_functional(const StructuredGrid& g, const FunctionalConfig& cfg) {
  cfg.validate();

  Evaluation out;
  out.gradient.assign(2 * static_cast<size_t>(g.interior_count()), 0.0);

  const auto accumulate = [&out](double w, const Evaluation& part) {
    out.value += w * part.value;
    for (size_t k = 0; k < out.gradient.size(); ++k) {
      out.gradient[k] += w * part.gradient[k];
    }
  };

  if (cfg.sigma < 1.0) {
    const Evaluation barrier = cfg.barrier == BarrierKind::Reciprocal
                                   ? barrier_functional(g, cfg.eps)
                                   : area_functional(g, cfg.delta);
    accumulate(1.0 - cfg.sigma, barrier);
  }
  if (cfg.sigma > 0.0) {
    Evaluation shape;
    switch (cfg.shape) {
      case ShapeKind::Rect: shape = rect_functional(g); break;
      case ShapeKind::RectBlend: shape = rect_blend_functional(g, cfg.alpha, cfg.beta); break;
      case ShapeKind::Area: shape = area_functional(g, cfg.delta); break;
    }
    accumulate(cfg.sigma, shape);
  }
  return out;
}

} // namespace quadgrid
