#pragma once

// Measurements on loss landscapes and training runs: the overdetermination
// ratio, directional curvature, gradient-norm-versus-loss curves and peak
// counting.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "twophase/cost_meter.hpp"
#include "twophase/numerics.hpp"
#include "twophase/objective.hpp"
#include "twophase/random.hpp"
#include "twophase/smoothing.hpp"
#include "twophase/trace.hpp"

namespace twophase {

/// Q = K * M / P: training constraints per trainable parameter.
inline double overdetermination_q(std::size_t examples, std::size_t outputs,
                                  std::size_t parameters) {
  require(parameters >= 1, "overdetermination_q: P must be positive");
  return static_cast<double>(examples) * static_cast<double>(outputs) /
         static_cast<double>(parameters);
}

class ProbeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConvexityProbe {
  double relative_step = 1e-5;  // epsilon = relative_step * max(1, max |theta_i|)
  std::size_t directions_per_point = 8;

  [[nodiscard]] double epsilon(const Vector& theta) const {
    require(relative_step > 0.0, "ConvexityProbe: step must be positive");
    double scale = 1.0;
    for (double v : theta) scale = std::max(scale, std::abs(v));
    return relative_step * scale;
  }
};

/// d^T H(theta) d from central differences of the gradient along unit d.
template <Objective F>
double directional_curvature(const F& objective, const Vector& theta, const Vector& d,
                             const ConvexityProbe& probe = {}) {
  require(theta.size() == d.size(), "directional_curvature: dimension mismatch");
  require(std::abs(norm(d) - 1.0) <= 1e-9, "directional_curvature: direction is not unit");
  const double eps = probe.epsilon(theta);
  const Evaluation plus = objective.evaluate(axpy(eps, d, theta));
  const Evaluation minus = objective.evaluate(axpy(-eps, d, theta));
  if (!std::isfinite(plus.loss) || !std::isfinite(minus.loss) || !all_finite(plus.gradient) ||
      !all_finite(minus.gradient))
    throw ProbeError("directional_curvature: objective not finite at probe points");
  return dot(d, plus.gradient - minus.gradient) / (2.0 * eps);
}

/// Curvatures along probe.directions_per_point random unit directions.
template <Objective F>
std::vector<double> random_direction_curvatures(const F& objective, const Vector& theta,
                                                const ConvexityProbe& probe, Rng& rng) {
  std::vector<double> out;
  for (std::size_t k = 0; k < probe.directions_per_point; ++k) {
    Vector d(theta.size());
    for (double& v : d) v = rng.normal();
    d = scaled(1.0 / norm(d), d);
    out.push_back(directional_curvature(objective, theta, d, probe));
  }
  return out;
}

/// (loss, grad_norm) pairs ordered by decreasing loss, ties in epoch order.
inline std::vector<std::pair<double, double>> grad_vs_loss(const TrainingTrace& trace) {
  require(!trace.rows.empty(), "grad_vs_loss: empty trace");
  std::vector<std::pair<double, double>> out;
  out.reserve(trace.rows.size());
  for (const auto& r : trace.rows) out.emplace_back(r.loss, r.grad_norm);
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  return out;
}

/// Interior strict local maxima of the window-smoothed series. Runs of equal
/// values are merged first, so a flat-topped peak counts once.
inline std::size_t count_peaks(std::span<const double> series, std::size_t window) {
  require(!series.empty(), "count_peaks: empty series");
  const std::vector<double> s = smooth_series(series, window);
  std::vector<double> runs;
  for (double v : s)
    if (runs.empty() || v != runs.back()) runs.push_back(v);
  std::size_t peaks = 0;
  for (std::size_t i = 1; i + 1 < runs.size(); ++i)
    if (runs[i - 1] < runs[i] && runs[i] > runs[i + 1]) ++peaks;
  return peaks;
}

/// Fixed-step gradient descent used to trace descent paths across a
/// landscape. Stops after max_epochs or once the gradient norm falls below
/// stop_ratio times its largest value so far. The point of every row is
/// appended to `path` when given.
template <Objective F>
TrainingTrace descent_trace(const F& objective, Vector start, double step, std::size_t max_epochs,
                            double stop_ratio = 1e-8, std::vector<Vector>* path = nullptr) {
  require(step > 0.0, "descent_trace: step must be positive");
  CostMeter meter(examples_of(objective));
  const Metered<F> metered(objective, meter);
  TrainingTrace trace;
  Vector x = std::move(start);
  double peak = 0.0;
  for (std::size_t epoch = 1; epoch <= max_epochs; ++epoch) {
    const Evaluation e = metered.evaluate(x);
    const double gn = norm(e.gradient);
    peak = std::max(peak, gn);
    TraceRow row;
    row.epoch = epoch;
    row.phase = Phase::descent;
    row.loss = e.loss;
    row.grad_norm = gn;
    row.gnmax = peak;
    row.cost_units = meter.cost_units();
    trace.rows.push_back(row);
    if (path) path->push_back(x);
    if (gn <= stop_ratio * peak) break;
    axpy_inplace(-step, e.gradient, x);
  }
  return trace;
}

}  // namespace twophase
