#pragma once

// Contracts between optimizers and the functions they minimize.
//
// A full-batch objective reports its dimension, the loss alone, and the
// loss with its gradient. A batch objective additionally exposes its
// example count and evaluates on a subset of examples (mini-batches for
// Adam). The Metered adapter charges a CostMeter for every call.

#include <concepts>
#include <cstddef>
#include <span>

#include "twophase/cost_meter.hpp"
#include "twophase/numerics.hpp"

namespace twophase {

struct Evaluation {
  double loss = 0.0;
  Vector gradient;
};

template <typename T>
concept Objective = requires(const T& f, const Vector& x) {
  { f.dimension() } -> std::convertible_to<std::size_t>;
  { f.loss(x) } -> std::convertible_to<double>;
  { f.evaluate(x) } -> std::same_as<Evaluation>;
};

template <typename T>
concept BatchObjective = Objective<T> && requires(const T& f, const Vector& x,
                                                  std::span<const std::size_t> rows) {
  { f.example_count() } -> std::convertible_to<std::size_t>;
  { f.evaluate_batch(x, rows) } -> std::same_as<Evaluation>;
};

/// Example count used for cost accounting; objectives without examples
/// count as one.
template <Objective F>
std::size_t examples_of(const F& f) {
  if constexpr (BatchObjective<F>) {
    return f.example_count();
  } else {
    return 1;
  }
}

template <Objective F>
class Metered {
 public:
  Metered(const F& f, CostMeter& meter) : f_(&f), meter_(&meter), examples_(examples_of(f)) {}

  [[nodiscard]] std::size_t dimension() const { return f_->dimension(); }
  [[nodiscard]] std::size_t example_count() const { return examples_; }

  double loss(const Vector& x) const {
    meter_->charge(EvalKind::forward, examples_);
    return f_->loss(x);
  }

  Evaluation evaluate(const Vector& x) const {
    meter_->charge(EvalKind::gradient, examples_);
    return f_->evaluate(x);
  }

  Evaluation evaluate_batch(const Vector& x, std::span<const std::size_t> rows) const
    requires BatchObjective<F>
  {
    meter_->charge(EvalKind::gradient, rows.size());
    return f_->evaluate_batch(x, rows);
  }

  [[nodiscard]] const F& inner() const { return *f_; }

 private:
  const F* f_;
  CostMeter* meter_;
  std::size_t examples_;
};

}  // namespace twophase
