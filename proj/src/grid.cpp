#include "quadgrid/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace quadgrid {

namespace {

const char* kSideNames[4] = {"bottom", "right", "top", "left"};

bool proper_cross(Point p, Point q, Point r, Point s) {
  const double o1 = signed_area(p, q, r);
  const double o2 = signed_area(p, q, s);
  const double o3 = signed_area(r, s, p);
  const double o4 = signed_area(r, s, q);
  return o1 * o2 < 0.0 && o3 * o4 < 0.0;
}

/// Reads content lines (skipping blank and '#'-comment lines) and remembers
/// the current line number for error messages.
class LineReader {
public:
  LineReader(const std::string& path) : path_(path), in_(path) {
    if (!in_) throw ParseError(path + ": cannot open file");
  }

  bool next(std::string& out) {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      out = line;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(path_ + ":" + std::to_string(lineno_) + ": " + what);
  }

  const std::string& path() const { return path_; }
  int lineno() const { return lineno_; }

private:
  std::string path_;
  std::ifstream in_;
  int lineno_ = 0;
};

Point parse_point_line(LineReader& r, const std::string& line) {
  std::istringstream ss(line);
  double x, y;
  if (!(ss >> x >> y)) r.fail("expected two decimal coordinates");
  std::string rest;
  if (ss >> rest) r.fail("trailing tokens after coordinates");
  if (!std::isfinite(x) || !std::isfinite(y)) r.fail("non-finite coordinate");
  return {x, y};
}

std::vector<Point> resample_arclength(const std::vector<Point>& poly, int count,
                                      const char* side_name) {
  std::vector<double> cum(poly.size(), 0.0);
  for (size_t k = 1; k < poly.size(); ++k) {
    cum[k] = cum[k - 1] + dist(poly[k - 1], poly[k]);
  }
  const double total = cum.back();
  if (total <= 0.0) {
    throw ParseError(std::string("contour side '") + side_name + "' has zero length");
  }

  std::vector<Point> out(count);
  out.front() = poly.front();
  out.back() = poly.back();
  size_t seg = 1;
  for (int k = 1; k + 1 < count; ++k) {
    const double target = total * k / (count - 1);
    while (seg + 1 < poly.size() && cum[seg] < target) ++seg;
    const double seg_len = cum[seg] - cum[seg - 1];
    const double t = seg_len > 0.0 ? (target - cum[seg - 1]) / seg_len : 0.0;
    out[k] = poly[seg - 1] + t * (poly[seg] - poly[seg - 1]);
  }
  return out;
}

} // namespace

void Contour::validate() const {
  for (int s = 0; s < 4; ++s) {
    if (sides[s].size() < 2) {
      throw ParseError(std::string("contour side '") + kSideNames[s] +
                       "' needs at least 2 points");
    }
  }
  for (int s = 0; s < 4; ++s) {
    const Point last = sides[s].back();
    const Point first = sides[(s + 1) % 4].front();
    if (last.x != first.x || last.y != first.y) {
      throw ParseError(std::string("contour not closed: sides '") + kSideNames[s] +
                       "' and '" + kSideNames[(s + 1) % 4] +
                       "' do not share a corner");
    }
  }
  const std::vector<Point> poly = polygon();
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (proper_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) {
        throw ParseError("contour polygon is self-intersecting");
      }
    }
  }
}

std::vector<Point> Contour::polygon() const {
  std::vector<Point> poly;
  for (int s = 0; s < 4; ++s) {
    poly.insert(poly.end(), sides[s].begin(), sides[s].end() - 1);
  }
  return poly;
}

StructuredGrid::StructuredGrid(int cols, int rows)
    : StructuredGrid(cols, rows, std::vector<Point>(static_cast<size_t>(cols) * rows)) {}

StructuredGrid::StructuredGrid(int cols, int rows, std::vector<Point> nodes)
    : m_(cols), n_(rows), nodes_(std::move(nodes)) {
  if (m_ < 2 || n_ < 2) throw Error("grid needs at least 2x2 nodes");
  if (nodes_.size() != static_cast<size_t>(m_) * n_) {
    throw Error("grid node count does not match dimensions");
  }
}

Quad StructuredGrid::cell(int i, int j) const {
  return {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
}

double StructuredGrid::total_area() const {
  double total = 0.0;
  for (int j = 0; j + 1 < n_; ++j) {
    for (int i = 0; i + 1 < m_; ++i) {
      const auto t = corner_triangle_areas(cell(i, j));
      total += t[1] + t[3];
    }
  }
  return total;
}

std::vector<double> StructuredGrid::pack_interior() const {
  std::vector<double> coords;
  coords.reserve(2 * static_cast<size_t>(interior_count()));
  for (int j = 1; j + 1 < n_; ++j) {
    for (int i = 1; i + 1 < m_; ++i) {
      coords.push_back(at(i, j).x);
      coords.push_back(at(i, j).y);
    }
  }
  return coords;
}

void StructuredGrid::unpack_interior(std::span<const double> coords) {
  if (coords.size() != 2 * static_cast<size_t>(interior_count())) {
    throw Error("interior coordinate vector has wrong length");
  }
  size_t k = 0;
  for (int j = 1; j + 1 < n_; ++j) {
    for (int i = 1; i + 1 < m_; ++i) {
      at(i, j) = Point(coords[k], coords[k + 1]);
      k += 2;
    }
  }
}

void StructuredGrid::flip_rows() {
  std::vector<Point> flipped(nodes_.size());
  for (int j = 0; j < n_; ++j) {
    std::copy_n(nodes_.begin() + static_cast<size_t>(j) * m_, m_,
                flipped.begin() + static_cast<size_t>(n_ - 1 - j) * m_);
  }
  nodes_ = std::move(flipped);
}

StructuredGrid tfi_generate(const Contour& c, int m, int n) {
  if (m < 2 || n < 2) throw Error("tfi_generate needs m, n >= 2");
  c.validate();

  const auto bottom = resample_arclength(c.sides[0], m, kSideNames[0]);
  const auto right = resample_arclength(c.sides[1], n, kSideNames[1]);
  auto top = resample_arclength(c.sides[2], m, kSideNames[2]);
  auto left = resample_arclength(c.sides[3], n, kSideNames[3]);
  std::reverse(top.begin(), top.end());  // NE->NW stored; want xi-increasing
  std::reverse(left.begin(), left.end()); // NW->SW stored; want eta-increasing

  const Point c00 = bottom.front(), c10 = bottom.back();
  const Point c01 = top.front(), c11 = top.back();

  StructuredGrid g(m, n);
  for (int i = 0; i < m; ++i) {
    g.at(i, 0) = bottom[i];
    g.at(i, n - 1) = top[i];
  }
  for (int j = 0; j < n; ++j) {
    g.at(0, j) = left[j];
    g.at(m - 1, j) = right[j];
  }
  for (int j = 1; j + 1 < n; ++j) {
    const double eta = static_cast<double>(j) / (n - 1);
    for (int i = 1; i + 1 < m; ++i) {
      const double xi = static_cast<double>(i) / (m - 1);
      const Point blend = (1 - eta) * bottom[i] + eta * top[i] +
                          (1 - xi) * left[j] + xi * right[j];
      const Point corner = (1 - xi) * (1 - eta) * c00 + xi * (1 - eta) * c10 +
                           (1 - xi) * eta * c01 + xi * eta * c11;
      g.at(i, j) = blend - corner;
    }
  }
  if (g.total_area() < 0.0) g.flip_rows();
  return g;
}

std::vector<double> triangle_areas(const StructuredGrid& g) {
  std::vector<double> areas;
  areas.reserve(4 * static_cast<size_t>(g.cell_count()));
  for (int j = 0; j + 1 < g.rows(); ++j) {
    for (int i = 0; i + 1 < g.cols(); ++i) {
      const auto t = corner_triangle_areas(g.cell(i, j));
      areas.insert(areas.end(), t.begin(), t.end());
    }
  }
  return areas;
}

ConvexityReport is_eps_convex(const StructuredGrid& g, double eps) {
  if (eps < 0.0) throw ConfigError("eps must be nonnegative");
  const std::vector<double> areas = triangle_areas(g);

  double positive_sum = 0.0;
  size_t positive_count = 0;
  for (double a : areas) {
    if (a > 0.0) {
      positive_sum += a;
      ++positive_count;
    }
  }
  const double mean_positive = positive_count > 0 ? positive_sum / positive_count : 0.0;
  const double threshold = eps * mean_positive;

  ConvexityReport report;
  report.eps_used = eps;
  report.min_triangle_area = areas.empty() ? 0.0 : *std::min_element(areas.begin(), areas.end());
  const int cells_per_row = g.cols() - 1;
  for (size_t q = 0; q < areas.size(); ++q) {
    if (areas[q] <= threshold) {
      const int cell_index = static_cast<int>(q / 4);
      const int i = cell_index % cells_per_row;
      const int j = cell_index / cells_per_row;
      if (report.offending_cells.empty() ||
          report.offending_cells.back() != std::make_pair(i, j)) {
        report.offending_cells.emplace_back(i, j);
      }
    }
  }
  return report;
}

Contour read_contour(const std::string& path) {
  LineReader reader(path);
  std::string line;
  if (!reader.next(line)) reader.fail("missing 'contour 4' header");
  {
    std::istringstream ss(line);
    std::string word;
    int count = 0;
    if (!(ss >> word >> count) || word != "contour" || count != 4) {
      reader.fail("expected header 'contour 4'");
    }
  }

  Contour c;
  for (int s = 0; s < 4; ++s) {
    if (!reader.next(line)) reader.fail(std::string("missing 'side <count>' for side '") +
                                        kSideNames[s] + "'");
    std::istringstream ss(line);
    std::string word;
    int count = 0;
    if (!(ss >> word >> count) || word != "side" || count < 2) {
      reader.fail("expected 'side <count>' with count >= 2");
    }
    c.sides[s].reserve(count);
    for (int k = 0; k < count; ++k) {
      if (!reader.next(line)) reader.fail("unexpected end of file inside side block");
      c.sides[s].push_back(parse_point_line(reader, line));
    }
  }
  if (reader.next(line)) reader.fail("trailing content after contour");
  c.validate();
  return c;
}

StructuredGrid read_grid(const std::string& path) {
  LineReader reader(path);
  std::string line;
  if (!reader.next(line)) reader.fail("missing 'grid <m> <n>' header");
  int m = 0, n = 0;
  {
    std::istringstream ss(line);
    std::string word;
    if (!(ss >> word >> m >> n) || word != "grid" || m < 2 || n < 2) {
      reader.fail("expected header 'grid <m> <n>' with m, n >= 2");
    }
  }

  std::vector<Point> nodes;
  nodes.reserve(static_cast<size_t>(m) * n);
  for (long k = 0; k < static_cast<long>(m) * n; ++k) {
    if (!reader.next(line)) {
      reader.fail("expected " + std::to_string(static_cast<long>(m) * n) +
                  " nodes, got " + std::to_string(k));
    }
    nodes.push_back(parse_point_line(reader, line));
  }
  if (reader.next(line)) reader.fail("trailing content after node list");

  StructuredGrid g(m, n, std::move(nodes));
  if (g.total_area() < 0.0) g.flip_rows();
  return g;
}

void write_grid(const StructuredGrid& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(path + ": cannot open for writing");
  out << "grid " << g.cols() << ' ' << g.rows() << '\n';
  char buf[64];
  for (int j = 0; j < g.rows(); ++j) {
    for (int i = 0; i < g.cols(); ++i) {
      const Point& p = g.at(i, j);
      std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
      out << buf;
    }
  }
  if (!out) throw Error(path + ": write failed");
}

} // namespace quadgrid
