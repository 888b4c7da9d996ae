#ifndef QUADGRID_FUNCTIONALS_HPP
#define QUADGRID_FUNCTIONALS_HPP

#include <vector>

#include "quadgrid/geometry.hpp"
#include "quadgrid/grid.hpp"

namespace quadgrid {

/// Shape term of the combined objective.
enum class ShapeKind {
  Rect,      // F_R: mean of (a^2+c^2)(b^2+d^2)/(4 a_c^2) over cells
  RectBlend, // F_r: alpha * F_p + beta * F_d
  Area,      // F_A: sum of 1/alpha_q^2 + delta * alpha_q^2
};

/// Barrier term keeping iterates strictly inside the unfolded set.
enum class BarrierKind {
  Reciprocal, // S_w: mean of alpha_mean / (alpha_q - eps * alpha_mean)
  Area,       // F_A used as barrier
};

/// Weights selecting and blending the functionals:
///   F(G) = (1 - sigma) * barrier + sigma * shape.
struct FunctionalConfig {
  ShapeKind shape = ShapeKind::RectBlend;
  BarrierKind barrier = BarrierKind::Reciprocal;
  double sigma = 0.5; // in [0, 1]; 0 = pure barrier, 1 = pure shape
  double alpha = 1.0; // F_p weight in F_r
  double beta = 1.0;  // F_d weight in F_r
  double delta = 1e-3; // F_A area-growth weight
  double eps = 1e-3;   // barrier feasibility threshold

  void validate() const; // throws ConfigError
};

/// Value plus gradient with respect to the interior node coordinates,
/// ordered like StructuredGrid::pack_interior (row-major nodes, x then y).
struct Evaluation {
  double value = 0.0;
  std::vector<double> gradient;
};

/// Per-cell distortion f(Q) = (a^2+c^2)(b^2+d^2)/(4 a_c^2); >= 1 with
/// equality iff Q is a rectangle. Throws FeasibilityError when a_c <= 0.
double cell_rect_distortion(const Quad& q);

/// Knupp's area-orthogonality product (a^2+c^2)(b^2+d^2); the unnormalized
/// numerator of cell_rect_distortion.
double cell_area_orthogonality(const Quad& q);

/// F_R: mean of cell_rect_distortion over all cells.
Evaluation rect_functional(const StructuredGrid& g);

/// F_p: sum over cells of the squared distance between the two diagonal
/// midpoints; zero iff every cell is a parallelogram.
Evaluation parallelogram_functional(const StructuredGrid& g);

/// F_d: sum over cells of (|diag1|^2 - |diag2|^2)^2; zero iff every cell has
/// equal diagonals.
Evaluation diagonal_functional(const StructuredGrid& g);

/// F_r = alpha * F_p + beta * F_d; zero iff every cell is a rectangle.
Evaluation rect_blend_functional(const StructuredGrid& g, double alpha, double beta);

/// F_A: sum over all 4*Ne corner-triangle areas of 1/alpha_q^2 +
/// delta * alpha_q^2. Throws FeasibilityError when some alpha_q is zero.
Evaluation area_functional(const StructuredGrid& g, double delta);

/// S_w: mean of alpha_mean / (alpha_q - eps * alpha_mean); smooth and finite
/// on eps-convex grids, diverging as any alpha_q approaches the threshold.
/// alpha_mean is the mean triangle area of g (and moves with the nodes; the
/// gradient includes that term). Throws FeasibilityError off the domain.
Evaluation barrier_functional(const StructuredGrid& g, double eps);

/// (1 - sigma) * barrier + sigma * shape per the config.
Evaluation combined_functional(const StructuredGrid& g, const FunctionalConfig& cfg);

} // namespace quadgrid

#endif
