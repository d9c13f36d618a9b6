#pragma once

// Fully connected network with tanh or relu hidden layers and a linear
// output layer, trained on the mean squared error against one-hot targets.
//
// Flattened parameter layout, layer by layer: the out x in weight matrix in
// row-major order, followed by the out biases.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "twophase/dataset.hpp"
#include "twophase/numerics.hpp"
#include "twophase/parallel.hpp"
#include "twophase/random.hpp"

namespace twophase {

enum class Activation { tanh, relu };

inline std::size_t parameter_count(std::span<const std::size_t> dims) {
  std::size_t p = 0;
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) p += dims[k] * dims[k + 1] + dims[k + 1];
  return p;
}

struct MlpModel {
  std::vector<std::size_t> layer_dims;
  Vector weights;
  Activation hidden_activation = Activation::tanh;

  [[nodiscard]] std::size_t input_width() const { return layer_dims.front(); }
  [[nodiscard]] std::size_t output_width() const { return layer_dims.back(); }
};

/// Weights and biases uniform in (-1/sqrt(fan_in), 1/sqrt(fan_in)).
inline Vector init_mlp_weights(std::span<const std::size_t> dims, std::uint64_t seed) {
  Rng rng(seed);
  Vector w(parameter_count(dims));
  std::size_t at = 0;
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(dims[k]));
    const std::size_t n = dims[k] * dims[k + 1] + dims[k + 1];
    for (std::size_t i = 0; i < n; ++i) w[at++] = rng.uniform_open(-bound, bound);
  }
  return w;
}

inline MlpModel make_mlp(std::vector<std::size_t> dims, Activation act, std::uint64_t seed) {
  require(!dims.empty(), "make_mlp: no layers");
  for (auto d : dims) require(d > 0, "make_mlp: zero-width layer");
  Vector w = init_mlp_weights(dims, seed);
  return {std::move(dims), std::move(w), act};
}

struct MseGrad {
  double mse = 0.0;
  Vector grad;
};

namespace detail {

inline constexpr std::size_t kMlpChunk = 64;

struct LayerSpan {
  std::size_t in = 0;
  std::size_t out = 0;
  std::size_t weight_offset = 0;
  std::size_t bias_offset = 0;
};

/// Evaluates a fixed weight vector. Weights are held transposed (in x out)
/// so that the inner loops run over contiguous output units.
class MlpKernel {
 public:
  MlpKernel(std::span<const std::size_t> dims, Activation act, std::span<const double> weights)
      : act_(act), transposed_(weights.size()) {
    require(weights.size() == parameter_count(dims), "mlp: weight count does not match dims");
    std::size_t at = 0;
    widest_ = dims.empty() ? 0 : dims[0];
    for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
      LayerSpan l{dims[k], dims[k + 1], at, at + dims[k] * dims[k + 1]};
      for (std::size_t o = 0; o < l.out; ++o)
        for (std::size_t i = 0; i < l.in; ++i)
          transposed_[l.weight_offset + i * l.out + o] = weights[l.weight_offset + o * l.in + i];
      for (std::size_t o = 0; o < l.out; ++o)
        transposed_[l.bias_offset + o] = weights[l.bias_offset + o];
      at = l.bias_offset + l.out;
      layers_.push_back(l);
      widest_ = std::max(widest_, l.out);
    }
    input_width_ = dims.empty() ? 0 : dims.front();
    output_width_ = dims.empty() ? 0 : dims.back();
  }

  [[nodiscard]] std::size_t parameters() const { return transposed_.size(); }
  [[nodiscard]] std::size_t output_width() const { return output_width_; }

  /// Per-call scratch: one activation buffer per layer boundary.
  struct Scratch {
    std::vector<std::vector<double>> act;
    std::vector<double> delta;
    std::vector<double> delta_prev;
  };

  [[nodiscard]] Scratch make_scratch() const {
    Scratch s;
    s.act.resize(layers_.size() + 1);
    s.act[0].resize(input_width_);
    for (std::size_t k = 0; k < layers_.size(); ++k) s.act[k + 1].resize(layers_[k].out);
    s.delta.resize(widest_);
    s.delta_prev.resize(widest_);
    return s;
  }

  /// Forward pass for one example; the prediction ends up in s.act.back().
  void forward(std::span<const double> x, Scratch& s) const {
    std::copy(x.begin(), x.end(), s.act[0].begin());
    for (std::size_t k = 0; k < layers_.size(); ++k) {
      const LayerSpan& l = layers_[k];
      const double* a = s.act[k].data();
      double* z = s.act[k + 1].data();
      const double* bias = transposed_.data() + l.bias_offset;
      for (std::size_t o = 0; o < l.out; ++o) z[o] = bias[o];
      for (std::size_t i = 0; i < l.in; ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        const double* w = transposed_.data() + l.weight_offset + i * l.out;
        for (std::size_t o = 0; o < l.out; ++o) z[o] += ai * w[o];
      }
      if (k + 1 < layers_.size()) activate(z, l.out);
    }
  }

  /// Squared error of the current prediction; accumulates the unscaled
  /// gradient of that squared error into `grad_t` (transposed layout).
  double backward(std::span<const double> target, Scratch& s, std::span<double> grad_t) const {
    const std::vector<double>& pred = s.act.back();
    double sq = 0.0;
    for (std::size_t o = 0; o < output_width_; ++o) {
      const double e = pred[o] - target[o];
      sq += e * e;
      s.delta[o] = 2.0 * e;
    }
    for (std::size_t k = layers_.size(); k-- > 0;) {
      const LayerSpan& l = layers_[k];
      const double* a = s.act[k].data();
      const double* d = s.delta.data();
      double* gw = grad_t.data() + l.weight_offset;
      double* gb = grad_t.data() + l.bias_offset;
      for (std::size_t o = 0; o < l.out; ++o) gb[o] += d[o];
      for (std::size_t i = 0; i < l.in; ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        double* g = gw + i * l.out;
        for (std::size_t o = 0; o < l.out; ++o) g[o] += ai * d[o];
      }
      if (k == 0) break;
      const double* wt = transposed_.data() + l.weight_offset;
      for (std::size_t i = 0; i < l.in; ++i) {
        double sum = 0.0;
        const double* w = wt + i * l.out;
        for (std::size_t o = 0; o < l.out; ++o) sum += w[o] * d[o];
        s.delta_prev[i] = sum * derivative(a[i]);
      }
      std::swap(s.delta, s.delta_prev);
    }
    return sq;
  }

  static double squared_error(std::span<const double> pred, std::span<const double> target) {
    double sq = 0.0;
    for (std::size_t o = 0; o < pred.size(); ++o) {
      const double e = pred[o] - target[o];
      sq += e * e;
    }
    return sq;
  }

  /// Converts a gradient from the transposed layout to the flattened one.
  [[nodiscard]] Vector untranspose(std::span<const double> grad_t, double scale) const {
    Vector g(grad_t.size());
    for (const LayerSpan& l : layers_) {
      for (std::size_t i = 0; i < l.in; ++i)
        for (std::size_t o = 0; o < l.out; ++o)
          g[l.weight_offset + o * l.in + i] = scale * grad_t[l.weight_offset + i * l.out + o];
      for (std::size_t o = 0; o < l.out; ++o)
        g[l.bias_offset + o] = scale * grad_t[l.bias_offset + o];
    }
    return g;
  }

 private:
  void activate(double* z, std::size_t n) const {
    if (act_ == Activation::tanh) {
      for (std::size_t o = 0; o < n; ++o) z[o] = std::tanh(z[o]);
    } else {
      for (std::size_t o = 0; o < n; ++o) z[o] = z[o] > 0.0 ? z[o] : 0.0;
    }
  }

  // Derivative expressed through the activation value.
  [[nodiscard]] double derivative(double a) const {
    if (act_ == Activation::tanh) return 1.0 - a * a;
    return a > 0.0 ? 1.0 : 0.0;
  }

  Activation act_;
  std::vector<LayerSpan> layers_;
  std::vector<double> transposed_;
  std::size_t input_width_ = 0;
  std::size_t output_width_ = 0;
  std::size_t widest_ = 0;
};

inline std::size_t chunk_count(std::size_t rows) {
  return (rows + kMlpChunk - 1) / kMlpChunk;
}

}  // namespace detail

/// Row selection for batch evaluation; an empty span selects every row.
using RowSelection = std::span<const std::size_t>;

/// Mean squared error over examples and output components, loss only.
inline double mlp_loss(std::span<const std::size_t> dims, Activation act,
                       std::span<const double> weights, const Dataset& data,
                       RowSelection rows = {}) {
  const std::size_t k = rows.empty() ? data.size() : rows.size();
  require(k > 0, "mlp_loss: empty batch");
  require(data.input_width() == dims.front() && data.output_width() == dims.back(),
          "mlp_loss: data shape does not match model");
  const detail::MlpKernel kernel(dims, act, weights);
  const std::size_t chunks = detail::chunk_count(k);
  std::vector<double> partial(chunks, 0.0);
  for_each_chunk(chunks, [&](std::size_t c) {
    auto s = kernel.make_scratch();
    double sq = 0.0;
    const std::size_t end = std::min(k, (c + 1) * detail::kMlpChunk);
    for (std::size_t j = c * detail::kMlpChunk; j < end; ++j) {
      const std::size_t row = rows.empty() ? j : rows[j];
      kernel.forward(data.inputs.row(row), s);
      sq += detail::MlpKernel::squared_error(s.act.back(), data.targets.row(row));
    }
    partial[c] = sq;
  });
  double total = 0.0;
  for (double v : partial) total += v;
  return total / static_cast<double>(k * dims.back());
}

/// Mean squared error and its gradient by backpropagation.
inline MseGrad mlp_loss_grad(std::span<const std::size_t> dims, Activation act,
                             std::span<const double> weights, const Dataset& data,
                             RowSelection rows = {}) {
  const std::size_t k = rows.empty() ? data.size() : rows.size();
  require(k > 0, "mlp_loss_grad: empty batch");
  require(data.input_width() == dims.front() && data.output_width() == dims.back(),
          "mlp_loss_grad: data shape does not match model");
  const detail::MlpKernel kernel(dims, act, weights);
  const std::size_t p = kernel.parameters();
  const std::size_t chunks = detail::chunk_count(k);

  auto run_chunk = [&](std::size_t c, std::span<double> grad_t) {
    auto s = kernel.make_scratch();
    double sq = 0.0;
    const std::size_t end = std::min(k, (c + 1) * detail::kMlpChunk);
    for (std::size_t j = c * detail::kMlpChunk; j < end; ++j) {
      const std::size_t row = rows.empty() ? j : rows[j];
      kernel.forward(data.inputs.row(row), s);
      sq += kernel.backward(data.targets.row(row), s, grad_t);
    }
    return sq;
  };

  std::vector<double> total(p, 0.0);
  double total_sq = 0.0;
  if (std::min(evaluation_threads(), chunks) <= 1) {
    std::vector<double> grad_t(p);
    for (std::size_t c = 0; c < chunks; ++c) {
      std::fill(grad_t.begin(), grad_t.end(), 0.0);
      total_sq += run_chunk(c, grad_t);
      for (std::size_t i = 0; i < p; ++i) total[i] += grad_t[i];
    }
  } else {
    std::vector<std::vector<double>> partial(chunks);
    std::vector<double> partial_sq(chunks, 0.0);
    for_each_chunk(chunks, [&](std::size_t c) {
      partial[c].assign(p, 0.0);
      partial_sq[c] = run_chunk(c, partial[c]);
    });
    for (std::size_t c = 0; c < chunks; ++c) {
      total_sq += partial_sq[c];
      for (std::size_t i = 0; i < p; ++i) total[i] += partial[c][i];
    }
  }
  const double denom = static_cast<double>(k * dims.back());
  return {total_sq / denom, kernel.untranspose(total, 1.0 / denom)};
}

inline MseGrad mlp_loss_grad(const MlpModel& model, const Dataset& data, RowSelection rows = {}) {
  return mlp_loss_grad(model.layer_dims, model.hidden_activation, model.weights.span(), data, rows);
}

inline double mlp_loss(const MlpModel& model, const Dataset& data, RowSelection rows = {}) {
  return mlp_loss(model.layer_dims, model.hidden_activation, model.weights.span(), data, rows);
}

/// Predictions for every input row, K x M.
inline Matrix mlp_forward(const MlpModel& model, const Matrix& inputs) {
  require(inputs.cols() == model.input_width(), "mlp_forward: input width mismatch");
  const detail::MlpKernel kernel(model.layer_dims, model.hidden_activation, model.weights.span());
  Matrix out(inputs.rows(), model.output_width());
  auto s = kernel.make_scratch();
  for (std::size_t r = 0; r < inputs.rows(); ++r) {
    kernel.forward(inputs.row(r), s);
    std::copy(s.act.back().begin(), s.act.back().end(), out.row(r).begin());
  }
  return out;
}

/// Fraction of rows whose prediction argmax equals the target argmax.
inline double argmax_accuracy(const Matrix& predictions, const Matrix& targets) {
  require(predictions.rows() == targets.rows() && predictions.cols() == targets.cols(),
          "argmax_accuracy: shape mismatch");
  if (predictions.rows() == 0) return 0.0;
  std::size_t hits = 0;
  for (std::size_t r = 0; r < predictions.rows(); ++r) {
    const auto p = predictions.row(r);
    const auto t = targets.row(r);
    const auto pi = std::max_element(p.begin(), p.end()) - p.begin();
    const auto ti = std::max_element(t.begin(), t.end()) - t.begin();
    if (pi == ti) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(predictions.rows());
}

}  // namespace twophase
