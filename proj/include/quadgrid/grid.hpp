#ifndef QUADGRID_GRID_HPP
#define QUADGRID_GRID_HPP

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quadgrid/geometry.hpp"

namespace quadgrid {

/// Boundary of a logically rectangular region as four polylines chained
/// head-to-tail: bottom (SW->SE), right (SE->NE), top (NE->NW), left
/// (NW->SW). Consecutive sides share their endpoint verbatim.
struct Contour {
  std::array<std::vector<Point>, 4> sides;

  /// Throws ParseError when a side has fewer than 2 points, the chain is not
  /// closed, or the boundary polygon self-intersects.
  void validate() const;

  /// The boundary cycle with the duplicated corners removed.
  std::vector<Point> polygon() const;
};

/// m x n lattice of nodes p_{i,j}, stored row-major (j outer, i inner).
/// Boundary nodes (i in {0, m-1} or j in {0, n-1}) are immovable; cell (i,j)
/// has vertices p_{i,j}, p_{i+1,j}, p_{i+1,j+1}, p_{i,j+1}, counterclockwise
/// for unfolded grids.
class StructuredGrid {
public:
  StructuredGrid(int cols, int rows);
  StructuredGrid(int cols, int rows, std::vector<Point> nodes);

  int cols() const { return m_; }
  int rows() const { return n_; }
  int node_count() const { return m_ * n_; }
  int cell_count() const { return (m_ - 1) * (n_ - 1); }
  int interior_count() const { return (m_ - 2) * (n_ - 2); }

  const Point& at(int i, int j) const { return nodes_[static_cast<size_t>(j) * m_ + i]; }
  Point& at(int i, int j) { return nodes_[static_cast<size_t>(j) * m_ + i]; }
  const std::vector<Point>& nodes() const { return nodes_; }

  bool is_boundary(int i, int j) const {
    return i == 0 || j == 0 || i == m_ - 1 || j == n_ - 1;
  }

  Quad cell(int i, int j) const;

  /// Sum of the shoelace areas of all cells.
  double total_area() const;

  /// Interior node coordinates in row-major node order, x before y; the
  /// layout shared with functional gradients.
  std::vector<double> pack_interior() const;
  void unpack_interior(std::span<const double> coords);

  /// Flips the row order in place (used to normalize orientation).
  void flip_rows();

private:
  int m_, n_;
  std::vector<Point> nodes_;
};

/// Result of the eps-convexity test. Empty offending list iff every corner
/// triangle area clears the threshold.
struct ConvexityReport {
  double min_triangle_area = 0.0;
  std::vector<std::pair<int, int>> offending_cells;
  double eps_used = 0.0;

  bool pass() const { return offending_cells.empty(); }
};

/// Structured grid over the contour: boundary nodes by arc-length-uniform
/// resampling of each side, interior nodes by bilinear transfinite
/// interpolation. The result may be folded for strongly nonconvex regions;
/// run is_eps_convex on it.
StructuredGrid tfi_generate(const Contour& c, int m, int n);

/// The 4 * Ne signed corner-triangle areas, cells row-major, corners in the
/// order (D,A,B), (A,B,C), (B,C,D), (C,D,A) per cell.
std::vector<double> triangle_areas(const StructuredGrid& g);

/// Passes iff every corner-triangle area alpha_q > eps * mean positive
/// triangle area. eps = 0 is strict unfoldedness.
ConvexityReport is_eps_convex(const StructuredGrid& g, double eps);

Contour read_contour(const std::string& path);
StructuredGrid read_grid(const std::string& path);
void write_grid(const StructuredGrid& g, const std::string& path);

} // namespace quadgrid

#endif
