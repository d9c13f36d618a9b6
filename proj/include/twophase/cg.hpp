#pragma once

// Nonlinear conjugate gradient on a full-batch objective. Step lengths come
// from the bracketing + golden-section line search, which evaluates the
// loss only; each step costs one gradient evaluation at the new point plus
// the line-search forward passes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>

#include "twophase/cost_meter.hpp"
#include "twophase/line_search.hpp"
#include "twophase/numerics.hpp"
#include "twophase/objective.hpp"
#include "twophase/trace.hpp"

namespace twophase {

enum class CgUpdate { polak_ribiere_plus, fletcher_reeves };

/// Gradient norms below this multiple of max(1, initial norm) count as zero.
inline constexpr double kZeroGradientFactor = 1e-10;

struct CgState {
  Vector g;      // gradient at the current point
  Vector g_old;  // gradient at the previous point
  Vector d;      // last accepted search direction
  double loss = 0.0;
  std::size_t iters_since_restart = 0;
  double step_scale = 1.0;  // multiplies initial_step; halved after a stall
  double last_alpha = 0.0;  // previous accepted step length along d
  double zero_threshold = 0.0;
  bool initialized = false;
  bool has_direction = false;
  CgUpdate update = CgUpdate::polak_ribiere_plus;

  /// Starts from a point whose loss and gradient are already known.
  void seed(const Evaluation& e) {
    g = e.gradient;
    g_old = Vector(g.size());
    d = Vector(g.size());
    loss = e.loss;
    has_direction = false;
    iters_since_restart = 0;
    zero_threshold = kZeroGradientFactor * std::max(1.0, norm(g));
    initialized = true;
  }
};

struct CgStepResult {
  double loss = 0.0;
  double grad_norm = 0.0;
  double alpha = 0.0;
  std::size_t line_evals = 0;
  bool converged = false;
  bool restarted = false;
  bool no_bracket = false;  // the first direction tried failed to bracket
  bool stalled = false;     // steepest descent failed too; no move
};

/// PR+ (or FR) coefficient for the new gradient given the previous one.
inline double cg_beta(const Vector& g_new, const Vector& g_prev, CgUpdate update) {
  const double denom = dot(g_prev, g_prev);
  if (denom == 0.0) return 0.0;
  if (update == CgUpdate::fletcher_reeves) return dot(g_new, g_new) / denom;
  return std::max(0.0, (dot(g_new, g_new) - dot(g_new, g_prev)) / denom);
}

namespace detail {

template <Objective F>
std::optional<LineMinimum> search_along(const F& objective, const Vector& x, const Vector& d,
                                        double f0, LineSearchConfig ls, double step_scale) {
  ls.initial_step *= step_scale;
  std::size_t evals = 0;
  auto phi = [&](double alpha) {
    ++evals;
    return objective.loss(axpy(alpha, d, x));
  };
  const auto br = bracket_minimum(phi, f0, ls);
  if (!br) return std::nullopt;
  LineSearchConfig golden = ls;
  golden.max_evals = ls.max_evals > br->evals ? ls.max_evals - br->evals : 2;
  LineMinimum m = golden_section(phi, *br, golden);
  m.evals = evals;
  return m;
}

}  // namespace detail

/// One CG iteration from `params`. On entry the state holds the loss and
/// gradient at `params` (the first call evaluates them). Picks the search
/// direction, line-searches along it, moves, and evaluates the gradient at
/// the new point. The loss never increases.
template <Objective F>
CgStepResult cg_step(CgState& state, Vector& params, const F& objective,
                     const LineSearchConfig& ls) {
  if (!state.initialized) state.seed(objective.evaluate(params));
  const std::size_t n = params.size();
  CgStepResult out;
  out.loss = state.loss;
  out.grad_norm = norm(state.g);
  if (out.grad_norm < state.zero_threshold) {
    out.converged = true;
    return out;
  }

  Vector d = scaled(-1.0, state.g);
  bool steepest = true;
  if (state.has_direction && state.iters_since_restart < n) {
    const double beta = cg_beta(state.g, state.g_old, state.update);
    Vector conj = axpy(beta, state.d, d);
    if (dot(conj, state.g) < 0.0) {
      d = std::move(conj);
      steepest = beta == 0.0;
    }
  }

  LineSearchConfig search = ls;
  if (ls.reuse_step && state.last_alpha > 0.0) search.initial_step = state.last_alpha;
  auto found = detail::search_along(objective, params, d, state.loss, search, state.step_scale);
  if (!found) {
    // Retry once along steepest descent with half the initial step.
    out.no_bracket = true;
    d = scaled(-1.0, state.g);
    steepest = true;
    state.step_scale *= 0.5;
    found = detail::search_along(objective, params, d, state.loss, ls, state.step_scale);
  }
  if (!found) {
    out.stalled = true;
    state.has_direction = false;
    state.iters_since_restart = 0;
    return out;
  }
  out.line_evals = found->evals;
  out.alpha = found->alpha;

  state.last_alpha = found->alpha;
  axpy_inplace(found->alpha, d, params);
  Evaluation e = objective.evaluate(params);
  if (steepest) {
    state.iters_since_restart = 0;
    out.restarted = true;
  }
  state.g_old = std::move(state.g);
  state.g = std::move(e.gradient);
  state.d = std::move(d);
  state.loss = e.loss;
  state.has_direction = true;
  ++state.iters_since_restart;

  out.loss = state.loss;
  out.grad_norm = norm(state.g);
  out.converged = out.grad_norm < state.zero_threshold;
  return out;
}

/// Runs up to `epochs` CG steps on the full-batch objective, one per epoch,
/// recording loss, gradient norm and cumulative cost after each. Stops early
/// once the gradient norm reaches zero.
template <Objective F>
std::vector<TraceRow> cg_minimize(Vector& params, const F& objective, std::size_t epochs,
                                  const LineSearchConfig& ls, CostMeter& meter,
                                  CgState* state_out = nullptr) {
  require(epochs >= 1, "cg_minimize: epochs must be positive");
  const Metered<F> metered(objective, meter);
  CgState local;
  CgState& state = state_out ? *state_out : local;
  if (!state.initialized) state.seed(metered.evaluate(params));

  std::vector<TraceRow> rows;
  for (std::size_t epoch = 1; epoch <= epochs; ++epoch) {
    const CgStepResult r = cg_step(state, params, metered, ls);
    TraceRow row;
    row.epoch = epoch;
    row.phase = Phase::cg;
    row.loss = r.loss;
    row.grad_norm = r.grad_norm;
    row.cost_units = meter.cost_units();
    if (r.converged) row.flags |= TraceFlag::converged;
    if (r.no_bracket) row.flags |= TraceFlag::no_bracket;
    if (r.stalled) row.flags |= TraceFlag::stalled;
    rows.push_back(row);
    if (r.converged) break;
  }
  return rows;
}

}  // namespace twophase
