#pragma once

// Concrete objectives: the MLP on a dataset, the 1-D toy landscapes, and
// convex quadratics.

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "twophase/dataset.hpp"
#include "twophase/mlp.hpp"
#include "twophase/numerics.hpp"
#include "twophase/objective.hpp"
#include "twophase/toy_models.hpp"

namespace twophase {

/// Mean squared error of an MLP over a dataset held by reference.
class MlpObjective {
 public:
  MlpObjective(std::vector<std::size_t> dims, Activation act, const Dataset& data)
      : dims_(std::move(dims)), act_(act), data_(&data) {
    require(data.input_width() == dims_.front() && data.output_width() == dims_.back(),
            "MlpObjective: data shape does not match model");
  }

  [[nodiscard]] std::size_t dimension() const { return parameter_count(dims_); }
  [[nodiscard]] std::size_t example_count() const { return data_->size(); }

  double loss(const Vector& w) const { return mlp_loss(dims_, act_, w.span(), *data_); }

  Evaluation evaluate(const Vector& w) const {
    auto r = mlp_loss_grad(dims_, act_, w.span(), *data_);
    return {r.mse, std::move(r.grad)};
  }

  Evaluation evaluate_batch(const Vector& w, std::span<const std::size_t> rows) const {
    require(!rows.empty(), "MlpObjective: empty batch");
    auto r = mlp_loss_grad(dims_, act_, w.span(), *data_, rows);
    return {r.mse, std::move(r.grad)};
  }

  [[nodiscard]] const std::vector<std::size_t>& dims() const { return dims_; }
  [[nodiscard]] Activation activation() const { return act_; }
  [[nodiscard]] const Dataset& data() const { return *data_; }

 private:
  std::vector<std::size_t> dims_;
  Activation act_;
  const Dataset* data_;
};

/// One-parameter landscape given by a (loss, dloss/dp) function. It counts
/// as a single example, so every batch is the full batch.
class ScalarObjective {
 public:
  explicit ScalarObjective(std::function<LossGrad(double)> fn) : fn_(std::move(fn)) {}

  static ScalarObjective toy(const ToyTanhTask& task) {
    return ScalarObjective([task](double p) { return toy_loss_grad(p, task); });
  }
  static ScalarObjective two_layer(const TwoLayerTask& task) {
    return ScalarObjective([task](double p) { return twolayer_loss_grad(p, task); });
  }

  [[nodiscard]] std::size_t dimension() const { return 1; }
  [[nodiscard]] std::size_t example_count() const { return 1; }

  double loss(const Vector& p) const { return fn_(p[0]).loss; }

  Evaluation evaluate(const Vector& p) const {
    const LossGrad lg = fn_(p[0]);
    return {lg.loss, Vector{lg.grad}};
  }

  Evaluation evaluate_batch(const Vector& p, std::span<const std::size_t>) const {
    return evaluate(p);
  }

 private:
  std::function<LossGrad(double)> fn_;
};

/// f(x) = 1/2 (x - c)^T A (x - c) for symmetric A. This equals
/// 1/2 x^T A x - b^T x with b = A c, shifted so the minimum value is zero;
/// evaluating around c keeps the loss free of cancellation near the optimum.
class QuadraticObjective {
 public:
  QuadraticObjective(Matrix a, Vector center) : a_(std::move(a)), center_(std::move(center)) {
    require(a_.rows() == a_.cols() && a_.rows() == center_.size(),
            "QuadraticObjective: shape mismatch");
  }

  [[nodiscard]] std::size_t dimension() const { return center_.size(); }
  [[nodiscard]] std::size_t example_count() const { return 1; }

  double loss(const Vector& x) const {
    const Vector e = x - center_;
    return 0.5 * dot(e, apply(e));
  }

  Evaluation evaluate(const Vector& x) const {
    const Vector e = x - center_;
    Vector g = apply(e);
    const double l = 0.5 * dot(e, g);
    return {l, std::move(g)};
  }

  Evaluation evaluate_batch(const Vector& x, std::span<const std::size_t>) const {
    return evaluate(x);
  }

  [[nodiscard]] Vector apply(const Vector& v) const {
    Vector out(v.size());
    for (std::size_t r = 0; r < a_.rows(); ++r) out[r] = dot(a_.row(r), v.span());
    return out;
  }

  [[nodiscard]] const Matrix& hessian() const { return a_; }
  [[nodiscard]] const Vector& center() const { return center_; }

 private:
  Matrix a_;
  Vector center_;
};

}  // namespace twophase
