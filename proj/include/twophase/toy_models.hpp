#pragma once

// One-dimensional tanh models whose loss landscapes show the convex basin
// around the minimum and the non-convex margins.

#include <cmath>
#include <cstdint>
#include <vector>

#include "twophase/numerics.hpp"
#include "twophase/random.hpp"

namespace twophase {

struct LossGrad {
  double loss = 0.0;
  double grad = 0.0;
};

/// Sum of `units` identical tanh units y = units * tanh(p * x) fitted to a
/// scalar reference r with the square loss.
struct ToyTanhTask {
  double x = 0.0;
  double r = 0.0;
  int units = 100;
};

inline LossGrad toy_loss_grad(double p, const ToyTanhTask& task) {
  const double t = std::tanh(p * task.x);
  const double n = static_cast<double>(task.units);
  const double residual = n * t - task.r;
  return {residual * residual, 2.0 * residual * n * task.x * (1.0 - t * t)};
}

/// Closed form second derivative of the toy loss in p.
inline double toy_loss_curvature(double p, const ToyTanhTask& task) {
  const double t = std::tanh(p * task.x);
  const double n = static_cast<double>(task.units);
  const double s = 1.0 - t * t;
  const double dy = n * task.x * s;
  const double d2y = -2.0 * n * task.x * task.x * t * s;
  return 2.0 * dy * dy + 2.0 * (n * t - task.r) * d2y;
}

/// Location of the zero-loss point, atanh(r / units) / x.
inline double toy_minimizer(const ToyTanhTask& task) {
  return std::atanh(task.r / static_cast<double>(task.units)) / task.x;
}

/// x uniform in (-0.5, 0.5), r uniform in (0, 1); x is redrawn per task.
inline std::vector<ToyTanhTask> gen_toy_tasks(std::uint64_t seed, std::size_t n) {
  require(n >= 1, "gen_toy_tasks: n must be positive");
  Rng rng(seed);
  std::vector<ToyTanhTask> tasks;
  tasks.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ToyTanhTask t;
    t.x = rng.uniform_open(-0.5, 0.5);
    t.r = rng.uniform_open(0.0, 1.0);
    tasks.push_back(t);
  }
  return tasks;
}

/// Hidden layer h = tanh(p * x), output y = tanh(h) + C * tanh(-2 h).
struct TwoLayerTask {
  double x = 0.5;
  double r = 0.1;
  double weight_c = 0.4;
};

inline LossGrad twolayer_loss_grad(double p, const TwoLayerTask& task) {
  const double h = std::tanh(p * task.x);
  const double a = std::tanh(h);
  const double b = std::tanh(-2.0 * h);
  const double y = a + task.weight_c * b;
  const double dy_dh = (1.0 - a * a) - 2.0 * task.weight_c * (1.0 - b * b);
  const double dh_dp = task.x * (1.0 - h * h);
  const double residual = y - task.r;
  return {residual * residual, 2.0 * residual * dy_dh * dh_dp};
}

}  // namespace twophase
