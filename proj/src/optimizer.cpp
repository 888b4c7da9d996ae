#include "quadgrid/optimizer.hpp"

#include <cmath>
#include <deque>

namespace quadgrid {

namespace {

constexpr double kArmijoC1 = 1e-4;

double dot_vec(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm_vec(std::span<const double> a) { return std::sqrt(dot_vec(a, a)); }

struct Pair {
  std::vector<double> s, y;
  double rho;
};

/// Two-loop recursion; returns the (negated) quasi-Newton direction.
std::vector<double> lbfgs_direction(const std::deque<Pair>& history,
                                    std::span<const double> grad) {
  std::vector<double> q(grad.begin(), grad.end());
  std::vector<double> a(history.size());
  for (size_t i = history.size(); i-- > 0;) {
    a[i] = history[i].rho * dot_vec(history[i].s, q);
    for (size_t k = 0; k < q.size(); ++k) q[k] -= a[i] * history[i].y[k];
  }
  if (!history.empty()) {
    const Pair& last = history.back();
    const double yy = dot_vec(last.y, last.y);
    if (yy > 0.0) {
      const double gamma = dot_vec(last.s, last.y) / yy;
      for (double& v : q) v *= gamma;
    }
  }
  for (size_t i = 0; i < history.size(); ++i) {
    const double b = history[i].rho * dot_vec(history[i].y, q);
    for (size_t k = 0; k < q.size(); ++k) q[k] += (a[i] - b) * history[i].s[k];
  }
  for (double& v : q) v = -v;
  return q;
}

struct Accepted {
  double step;
  std::vector<double> x;
  Evaluation eval;
};

/// Backtracks until the trial grid is eps-convex and Armijo-decreasing.
std::optional<Accepted> try_line_search(StructuredGrid& work, std::span<const double> x,
                                        std::span<const double> direction, double f0,
                                        double slope, const FunctionalConfig& cfg,
                                        double eps, double t0, double step_tol) {
  std::vector<double> trial(x.size());
  for (double t = t0; t >= step_tol; t *= 0.5) {
    for (size_t k = 0; k < x.size(); ++k) trial[k] = x[k] + t * direction[k];
    work.unpack_interior(trial);
    if (!is_eps_convex(work, eps).pass()) continue;
    Evaluation ev;
    try {
      ev = combined_functional(work, cfg);
    } catch (const FeasibilityError&) {
      continue;
    }
    if (ev.value <= f0 + kArmijoC1 * t * slope) {
      return Accepted{t, std::move(trial), std::move(ev)};
    }
  }
  return std::nullopt;
}

} // namespace

std::optional<double> line_search(const StructuredGrid& g, std::span<const double> direction,
                                  const FunctionalConfig& cfg, double eps, double t0,
                                  double step_tol) {
  cfg.validate();
  if (direction.size() != 2 * static_cast<size_t>(g.interior_count())) {
    throw Error("direction vector has wrong length");
  }
  const Evaluation ev = combined_functional(g, cfg);
  const double slope = dot_vec(ev.gradient, direction);
  if (!(slope < 0.0)) {
    throw Error("line_search requires a descent direction");
  }
  StructuredGrid work = g;
  const std::vector<double> x = g.pack_interior();
  const auto result = try_line_search(work, x, direction, ev.value, slope, cfg, eps, t0, step_tol);
  if (!result) return std::nullopt;
  return result->step;
}

SmoothResult smooth(const StructuredGrid& g0, const FunctionalConfig& cfg,
                    const SmoothOptions& opts) {
  cfg.validate();
  if (opts.max_iters < 1) throw ConfigError("max_iters must be at least 1");
  if (!(opts.grad_tol > 0.0) || !(opts.step_tol > 0.0)) {
    throw ConfigError("tolerances must be positive");
  }
  if (!is_eps_convex(g0, opts.eps).pass()) {
    throw FeasibilityError(
        "initial grid is not eps-convex; run a barrier-only pass (sigma = 0) first");
  }

  SmoothResult result{g0, 0, 0.0, 0.0, {}, Termination::MaxIters};
  StructuredGrid work = g0;
  std::vector<double> x = work.pack_interior();

  Evaluation ev = combined_functional(work, cfg);
  double grad_norm = norm_vec(ev.gradient);
  const double grad_norm0 = grad_norm;
  if (opts.trace) result.trace.push_back({0, ev.value, grad_norm, 0.0});

  std::deque<Pair> history;
  Termination termination = Termination::MaxIters;

  int iter = 0;
  while (iter < opts.max_iters) {
    if (grad_norm <= opts.grad_tol * grad_norm0 || x.empty()) {
      termination = Termination::GradTol;
      break;
    }

    std::vector<double> direction = lbfgs_direction(history, ev.gradient);
    double slope = dot_vec(ev.gradient, direction);
    if (!(slope < 0.0)) {
      // fall back to steepest descent if the curvature pairs went stale
      history.clear();
      direction.assign(ev.gradient.size(), 0.0);
      for (size_t k = 0; k < direction.size(); ++k) direction[k] = -ev.gradient[k];
      slope = -grad_norm * grad_norm;
    }

    auto accepted =
        try_line_search(work, x, direction, ev.value, slope, cfg, opts.eps, 1.0, opts.step_tol);
    if (!accepted) {
      termination = Termination::StepTol;
      break;
    }

    Pair pair;
    pair.s.resize(x.size());
    pair.y.resize(x.size());
    for (size_t k = 0; k < x.size(); ++k) {
      pair.s[k] = accepted->x[k] - x[k];
      pair.y[k] = accepted->eval.gradient[k] - ev.gradient[k];
    }
    const double sy = dot_vec(pair.s, pair.y);
    if (sy > 1e-12 * norm_vec(pair.s) * norm_vec(pair.y)) {
      pair.rho = 1.0 / sy;
      history.push_back(std::move(pair));
      if (history.size() > static_cast<size_t>(opts.memory)) history.pop_front();
    }

    x = std::move(accepted->x);
    ev = std::move(accepted->eval);
    grad_norm = norm_vec(ev.gradient);
    ++iter;
    if (opts.trace) result.trace.push_back({iter, ev.value, grad_norm, accepted->step});
    if (opts.on_iterate) {
      work.unpack_interior(x);
      opts.on_iterate(work, iter, ev.value);
    }
  }

  work.unpack_interior(x);
  result.grid = work;
  result.iterations = iter;
  result.final_value = ev.value;
  result.final_grad_norm = grad_norm;
  result.termination = termination;
  return result;
}

} // namespace quadgrid
