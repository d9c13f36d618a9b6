#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>

#include "twophase/numerics.hpp"

namespace twophase {

enum class EvalKind { forward, gradient };

/// Counts evaluation work in examples processed. One cost unit is a forward
/// pass over the whole training set; a gradient evaluation costs two
/// (forward plus backward). Counters are atomic so objectives evaluated from
/// several threads can charge one meter.
class CostMeter {
 public:
  explicit CostMeter(std::size_t examples_per_unit = 1) : examples_per_unit_(examples_per_unit) {
    require(examples_per_unit > 0, "CostMeter: examples_per_unit must be positive");
  }

  CostMeter(const CostMeter& other)
      : examples_per_unit_(other.examples_per_unit_),
        forward_(other.forward_examples()),
        gradient_(other.gradient_examples()) {}

  void charge(EvalKind kind, std::size_t examples) {
    auto& counter = kind == EvalKind::forward ? forward_ : gradient_;
    counter.fetch_add(examples, std::memory_order_relaxed);
  }

  [[nodiscard]] std::uint64_t forward_examples() const {
    return forward_.load(std::memory_order_relaxed);
  }
  [[nodiscard]] std::uint64_t gradient_examples() const {
    return gradient_.load(std::memory_order_relaxed);
  }
  [[nodiscard]] std::size_t examples_per_unit() const { return examples_per_unit_; }

  [[nodiscard]] double cost_units() const {
    const auto work = forward_examples() + 2 * gradient_examples();
    return static_cast<double>(work) / static_cast<double>(examples_per_unit_);
  }

 private:
  std::size_t examples_per_unit_;
  std::atomic<std::uint64_t> forward_{0};
  std::atomic<std::uint64_t> gradient_{0};
};

}  // namespace twophase
