// quadgrid: structured quadrilateral grid generation, smoothing and quality
// reporting. Subcommands: tfi, smooth, quality, colormap.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "quadgrid/functionals.hpp"
#include "quadgrid/grid.hpp"
#include "quadgrid/optimizer.hpp"
#include "quadgrid/quality.hpp"
#include "quadgrid/report.hpp"

namespace qg = quadgrid;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;       // config / parse / usage errors
constexpr int kExitInfeasible = 2;  // folded grids, barrier violations
constexpr int kExitQualityGate = 3; // cells below the quality threshold

qg::QuadMeasureKind parse_measure_or_throw(const std::string& name) {
  const auto kind = qg::parse_measure(name);
  if (!kind) {
    throw qg::ConfigError("unknown measure '" + name + "'; valid names: " +
                          qg::measure_name_list());
  }
  return *kind;
}

double mean_node_spacing(const qg::StructuredGrid& g) {
  double sum = 0.0;
  long count = 0;
  for (int j = 0; j < g.rows(); ++j) {
    for (int i = 0; i + 1 < g.cols(); ++i, ++count) sum += qg::dist(g.at(i, j), g.at(i + 1, j));
  }
  for (int j = 0; j + 1 < g.rows(); ++j) {
    for (int i = 0; i < g.cols(); ++i, ++count) sum += qg::dist(g.at(i, j), g.at(i, j + 1));
  }
  return count > 0 ? sum / count : 0.0;
}

void perturb_interior(qg::StructuredGrid& g, double fraction, unsigned long seed) {
  const double amplitude = fraction * mean_node_spacing(g);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> shift(-amplitude, amplitude);
  for (int j = 1; j + 1 < g.rows(); ++j) {
    for (int i = 1; i + 1 < g.cols(); ++i) {
      g.at(i, j) = qg::Point(g.at(i, j).x + shift(rng), g.at(i, j).y + shift(rng));
    }
  }
}

void print_convexity(const qg::ConvexityReport& report) {
  std::printf("convexity: %s  min-triangle-area=%.6g  offending-cells=%zu  eps=%g\n",
              report.pass() ? "pass" : "FAIL", report.min_triangle_area,
              report.offending_cells.size(), report.eps_used);
  for (size_t k = 0; k < report.offending_cells.size() && k < 10; ++k) {
    std::printf("  folded cell (%d,%d)\n", report.offending_cells[k].first,
                report.offending_cells[k].second);
  }
  if (report.offending_cells.size() > 10) std::printf("  ...\n");
}

const char* termination_name(qg::Termination t) {
  switch (t) {
    case qg::Termination::GradTol: return "gradtol";
    case qg::Termination::StepTol: return "steptol";
    case qg::Termination::MaxIters: return "maxiters";
  }
  return "unknown";
}

struct SmoothCli {
  std::string grid_in, grid_out;
  std::string functional = "fr";
  std::string barrier = "sw";
  std::string measure = "rectangles2015";
  double sigma = 0.5;
  double alpha = 1.0;
  double beta = -1.0; // negative: derive 1/mean_triangle_area^2 from g0
  double delta = 1e-3;
  double eps = 1e-3;
  int max_iters = 500;
  double tol = 1e-6;
  bool trace = false;
  bool barrier_first = false;
};

int cmd_tfi(const std::string& contour_path, int m, int n, const std::string& out_path,
            double perturb, unsigned long seed) {
  const qg::Contour contour = qg::read_contour(contour_path);
  qg::StructuredGrid g = qg::tfi_generate(contour, m, n);
  if (perturb > 0.0) perturb_interior(g, perturb, seed);
  qg::write_grid(g, out_path);
  const qg::ConvexityReport report = qg::is_eps_convex(g, 0.0);
  print_convexity(report);
  std::printf("wrote %s (%d x %d nodes, %d cells)\n", out_path.c_str(), g.cols(), g.rows(),
              g.cell_count());
  return report.pass() ? kExitOk : kExitInfeasible;
}

int cmd_smooth(const SmoothCli& o) {
  qg::FunctionalConfig cfg;
  if (o.functional == "fr") cfg.shape = qg::ShapeKind::RectBlend;
  else if (o.functional == "fR") cfg.shape = qg::ShapeKind::Rect;
  else if (o.functional == "fa") cfg.shape = qg::ShapeKind::Area;
  else throw qg::ConfigError("unknown functional '" + o.functional + "' (use fr, fR or fa)");
  if (o.barrier == "sw") cfg.barrier = qg::BarrierKind::Reciprocal;
  else if (o.barrier == "fa") cfg.barrier = qg::BarrierKind::Area;
  else throw qg::ConfigError("unknown barrier '" + o.barrier + "' (use sw or fa)");
  cfg.sigma = o.sigma;
  cfg.alpha = o.alpha;
  cfg.delta = o.delta;
  cfg.eps = o.eps;

  qg::StructuredGrid g = qg::read_grid(o.grid_in);

  if (o.beta >= 0.0) {
    cfg.beta = o.beta;
  } else {
    // default: beta = 1 / mean_triangle_area^2 at the initial grid, making
    // the F_p and F_d terms commensurate
    const auto areas = qg::triangle_areas(g);
    double mean = 0.0;
    for (double a : areas) mean += a;
    mean /= static_cast<double>(areas.size());
    cfg.beta = mean != 0.0 ? 1.0 / (mean * mean) : 1.0;
  }
  cfg.validate();

  const auto kind = parse_measure_or_throw(o.measure);

  qg::SmoothOptions opts;
  opts.max_iters = o.max_iters;
  opts.grad_tol = o.tol;
  opts.eps = o.eps;
  opts.trace = o.trace;

  if (o.barrier_first && !qg::is_eps_convex(g, o.eps).pass()) {
    qg::FunctionalConfig barrier_cfg = cfg;
    barrier_cfg.sigma = 0.0;
    barrier_cfg.eps = 0.0;
    qg::SmoothOptions barrier_opts = opts;
    barrier_opts.eps = 0.0;
    std::printf("barrier-first: input not eps-convex, running a sigma=0 pass\n");
    g = qg::smooth(g, barrier_cfg, barrier_opts).grid; // throws if truly folded
  }

  const double distortion0 = [&] {
    try {
      return qg::grid_distortion(g, kind);
    } catch (const qg::Error&) {
      return -1.0;
    }
  }();

  const qg::SmoothResult result = qg::smooth(g, cfg, opts);

  if (o.trace) {
    for (const auto& entry : result.trace) {
      std::printf("trace iter=%d value=%.12g grad=%.6g step=%.6g\n", entry.iter, entry.value,
                  entry.grad_norm, entry.step);
    }
  }

  double distortion1 = -1.0;
  try {
    distortion1 = qg::grid_distortion(result.grid, kind);
  } catch (const qg::Error&) {
  }

  qg::write_grid(result.grid, o.grid_out);

  const double value0 = result.trace.empty()
                            ? qg::combined_functional(g, cfg).value
                            : result.trace.front().value;
  std::printf("iterations      %d (termination: %s)\n", result.iterations,
              termination_name(result.termination));
  std::printf("value           %.12g -> %.12g\n", value0, result.final_value);
  if (distortion0 >= 0.0 && distortion1 >= 0.0) {
    std::printf("distortion(%s)  %.9g -> %.9g\n", o.measure.c_str(), distortion0, distortion1);
  } else {
    std::printf("distortion(%s)  n/a (inadmissible cells)\n", o.measure.c_str());
  }
  std::printf(
      "smooth iterations=%d value0=%.12g value1=%.12g distortion0=%.9g distortion1=%.9g "
      "termination=%s\n",
      result.iterations, value0, result.final_value, distortion0, distortion1,
      termination_name(result.termination));
  return kExitOk;
}

int cmd_quality(const std::string& grid_path, const std::string& measure, double threshold) {
  const auto kind = parse_measure_or_throw(measure);
  const qg::StructuredGrid g = qg::read_grid(grid_path);
  const qg::QualityStats stats = qg::quality_stats(g, kind, threshold);

  std::printf("%-12s %s\n", "measure", measure.c_str());
  std::printf("%-12s %d\n", "cells", g.cell_count());
  std::printf("%-12s %.9g\n", "min", stats.min);
  std::printf("%-12s %.9g\n", "mean", stats.mean);
  std::printf("%-12s %.9g\n", "max", stats.max);
  std::printf("%-12s %d (threshold %g)\n", "below", stats.below_threshold_count,
              stats.threshold);
  std::printf("histogram   ");
  for (int count : stats.histogram) std::printf(" %d", count);
  std::printf("\n");
  std::printf("quality measure=%s cells=%d min=%.9g mean=%.9g max=%.9g below=%d threshold=%g\n",
              measure.c_str(), g.cell_count(), stats.min, stats.mean, stats.max,
              stats.below_threshold_count, stats.threshold);
  return stats.below_threshold_count > 0 ? kExitQualityGate : kExitOk;
}

int cmd_colormap(const std::string& grid_path, const std::string& out_path,
                 const std::string& measure, double clamp_lo, double clamp_hi) {
  const auto kind = parse_measure_or_throw(measure);
  const qg::StructuredGrid g = qg::read_grid(grid_path);
  qg::ColorMapSpec spec = qg::ColorMapSpec::default_spec();
  spec.clamp_range = {clamp_lo, clamp_hi};
  const std::string svg = qg::colormap_svg(g, kind, spec);
  std::ofstream out(out_path);
  if (!out) throw qg::Error(out_path + ": cannot open for writing");
  out << svg;
  if (!out) throw qg::Error(out_path + ": write failed");
  std::printf("wrote %s (%d cells)\n", out_path.c_str(), g.cell_count());
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"structured quadrilateral grid generation and quality toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "key=value config file; scope keys in sections [tfi], [smooth], "
                 "[quality], [colormap]");

  // tfi
  std::string contour_path, grid_out_path;
  int tfi_m = 0, tfi_n = 0;
  double perturb = 0.0;
  unsigned long seed = 1;
  CLI::App* tfi = app.add_subcommand("tfi", "generate a grid by transfinite interpolation");
  tfi->add_option("contour", contour_path, "contour file")->required();
  tfi->add_option("m", tfi_m, "columns")->required()->check(CLI::Range(2, 100000));
  tfi->add_option("n", tfi_n, "rows")->required()->check(CLI::Range(2, 100000));
  tfi->add_option("out", grid_out_path, "output grid file")->required();
  tfi->add_option("--perturb", perturb, "displace interior nodes by this fraction of spacing");
  tfi->add_option("--seed", seed, "seed for --perturb");
  tfi->fallthrough();

  // smooth
  SmoothCli sm;
  CLI::App* smooth = app.add_subcommand("smooth", "optimize interior nodes");
  smooth->add_option("in", sm.grid_in, "input grid file")->required();
  smooth->add_option("out", sm.grid_out, "output grid file")->required();
  smooth->add_option("--functional", sm.functional, "shape functional: fr, fR or fa");
  smooth->add_option("--barrier", sm.barrier, "barrier functional: sw or fa");
  smooth->add_option("--sigma", sm.sigma, "shape weight in [0,1]");
  smooth->add_option("--alpha", sm.alpha, "F_p weight inside fr");
  smooth->add_option("--beta", sm.beta, "F_d weight inside fr (default: 1/mean_area^2)");
  smooth->add_option("--delta", sm.delta, "area-growth weight inside fa");
  smooth->add_option("--eps", sm.eps, "feasibility threshold");
  smooth->add_option("--measure", sm.measure, "measure for the distortion report");
  smooth->add_option("--max-iters", sm.max_iters, "iteration cap");
  smooth->add_option("--tol", sm.tol, "relative gradient tolerance");
  smooth->add_flag("--trace", sm.trace, "print the per-iteration trace");
  smooth->add_flag("--barrier-first", sm.barrier_first,
                   "run a sigma=0 pass when the input is not eps-convex");
  smooth->fallthrough();

  // quality
  std::string quality_grid, quality_measure = "rectangles2015";
  double threshold = 0.95;
  CLI::App* quality = app.add_subcommand("quality", "per-cell quality statistics");
  quality->add_option("grid", quality_grid, "grid file")->required();
  quality->add_option("--measure", quality_measure, "quality measure name");
  quality->add_option("--threshold", threshold, "acceptability threshold");
  quality->fallthrough();

  // colormap
  std::string cm_grid, cm_out, cm_measure = "rectangles2015";
  double clamp_lo = 0.0, clamp_hi = 1.0;
  CLI::App* colormap = app.add_subcommand("colormap", "write an SVG quality color map");
  colormap->add_option("grid", cm_grid, "grid file")->required();
  colormap->add_option("out", cm_out, "output SVG file")->required();
  colormap->add_option("--measure", cm_measure, "quality measure name");
  colormap->add_option("--clamp-lo", clamp_lo, "palette range lower bound");
  colormap->add_option("--clamp-hi", clamp_hi, "palette range upper bound");
  colormap->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (tfi->parsed()) return cmd_tfi(contour_path, tfi_m, tfi_n, grid_out_path, perturb, seed);
    if (smooth->parsed()) return cmd_smooth(sm);
    if (quality->parsed()) return cmd_quality(quality_grid, quality_measure, threshold);
    if (colormap->parsed()) return cmd_colormap(cm_grid, cm_out, cm_measure, clamp_lo, clamp_hi);
  } catch (const qg::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const qg::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const qg::FeasibilityError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInfeasible;
  } catch (const qg::MeasureError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInfeasible;
  } catch (const qg::NonconvexError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInfeasible;
  } catch (const qg::DegenerateError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInfeasible;
  } catch (const qg::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
