#ifndef QUADGRID_OPTIMIZER_HPP
#define QUADGRID_OPTIMIZER_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "quadgrid/functionals.hpp"
#include "quadgrid/grid.hpp"

namespace quadgrid {

struct SmoothOptions {
  int max_iters = 500;
  double grad_tol = 1e-6;  // relative to the initial gradient norm
  double step_tol = 1e-12; // line-search failure threshold
  double eps = 1e-3;       // feasibility threshold for every iterate
  bool trace = false;      // keep the per-iterate trace in the result
  int memory = 8;          // quasi-Newton history pairs

  /// Optional observer invoked with every accepted iterate.
  std::function<void(const StructuredGrid&, int iter, double value)> on_iterate;
};

struct TraceEntry {
  int iter = 0;
  double value = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;
};

enum class Termination { GradTol, StepTol, MaxIters };

struct SmoothResult {
  StructuredGrid grid;
  int iterations = 0;
  double final_value = 0.0;
  double final_grad_norm = 0.0;
  std::vector<TraceEntry> trace;
  Termination termination = Termination::GradTol;
};

/// Minimizes combined_functional(g, cfg) over the interior nodes with
/// limited-memory quasi-Newton (boundary nodes stay fixed). Every accepted
/// iterate passes is_eps_convex(., opts.eps) and strictly decreases the
/// functional. Throws FeasibilityError when g0 itself is infeasible.
SmoothResult smooth(const StructuredGrid& g0, const FunctionalConfig& cfg,
                    const SmoothOptions& opts);

/// Backtracking line search from g along `direction` (packed interior
/// layout): returns the largest step in {t0, t0/2, t0/4, ...} whose trial
/// grid is eps-convex and satisfies the Armijo condition (c1 = 1e-4), or
/// nullopt when the step falls below step_tol. Throws Error when `direction`
/// is not a descent direction.
std::optional<double> line_search(const StructuredGrid& g, std::span<const double> direction,
                                  const FunctionalConfig& cfg, double eps, double t0 = 1.0,
                                  double step_tol = 1e-12);

} // namespace quadgrid

#endif
