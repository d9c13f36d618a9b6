#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "twophase/numerics.hpp"
#include "twophase/objective.hpp"
#include "twophase/random.hpp"

namespace twophase {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::size_t batch_size = 512;

  void validate() const {
    require(lr > 0.0, "AdamConfig: lr must be positive");
    require(beta1 >= 0.0 && beta1 < 1.0, "AdamConfig: beta1 outside [0,1)");
    require(beta2 >= 0.0 && beta2 < 1.0, "AdamConfig: beta2 outside [0,1)");
    require(eps > 0.0, "AdamConfig: eps must be positive");
    require(batch_size > 0, "AdamConfig: batch_size must be positive");
  }
};

struct AdamState {
  Vector m;
  Vector v;
  std::size_t t = 0;

  explicit AdamState(std::size_t dim = 0) : m(dim), v(dim) {}
};

/// One bias-corrected Adam update of `params` in place.
inline void adam_step(AdamState& state, const AdamConfig& cfg, Vector& params,
                      const Vector& grad) {
  require(params.size() == grad.size() && state.m.size() == params.size() &&
              state.v.size() == params.size(),
          "adam_step: dimension mismatch");
  ++state.t;
  const double t = static_cast<double>(state.t);
  const double c1 = 1.0 - std::pow(cfg.beta1, t);
  const double c2 = 1.0 - std::pow(cfg.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grad[i];
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * g;
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * g * g;
    const double m_hat = state.m[i] / c1;
    const double v_hat = state.v[i] / c2;
    params[i] -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.eps);
  }
}

/// One pass over a shuffled example order in mini-batches of
/// cfg.batch_size; the last batch may be partial. Returns the number of
/// steps taken.
template <BatchObjective F>
std::size_t adam_epoch(const F& objective, Vector& params, AdamState& state,
                       const AdamConfig& cfg, Rng& rng) {
  const std::size_t k = objective.example_count();
  std::vector<std::size_t> order = iota_indices(k);
  rng.shuffle(std::span<std::size_t>(order));
  std::size_t steps = 0;
  for (std::size_t begin = 0; begin < k; begin += cfg.batch_size) {
    const std::size_t end = std::min(k, begin + cfg.batch_size);
    const std::span<const std::size_t> batch(order.data() + begin, end - begin);
    const Evaluation e = objective.evaluate_batch(params, batch);
    adam_step(state, cfg, params, e.gradient);
    ++steps;
  }
  return steps;
}

}  // namespace twophase
