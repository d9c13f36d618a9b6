#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "twophase/numerics.hpp"
#include "twophase/random.hpp"

namespace twophase {

/// K examples with D inputs and M targets each, one row per example.
struct Dataset {
  Matrix inputs;
  Matrix targets;

  [[nodiscard]] std::size_t size() const noexcept { return inputs.rows(); }
  [[nodiscard]] std::size_t input_width() const noexcept { return inputs.cols(); }
  [[nodiscard]] std::size_t output_width() const noexcept { return targets.cols(); }
};

inline Matrix one_hot(std::span<const std::uint8_t> labels, std::size_t classes) {
  Matrix m(labels.size(), classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    require(labels[i] < classes, "one_hot: label out of range");
    m(i, labels[i]) = 1.0;
  }
  return m;
}

inline Dataset select_rows(const Dataset& data, std::span<const std::size_t> rows) {
  Dataset out{Matrix(rows.size(), data.input_width()), Matrix(rows.size(), data.output_width())};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i] < data.size(), "select_rows: row out of range");
    const auto src_in = data.inputs.row(rows[i]);
    const auto src_out = data.targets.row(rows[i]);
    std::copy(src_in.begin(), src_in.end(), out.inputs.row(i).begin());
    std::copy(src_out.begin(), src_out.end(), out.targets.row(i).begin());
  }
  return out;
}

struct DataSplit {
  Dataset train;
  Dataset validation;
};

/// Seeded disjoint train/validation subsets drawn from `data`.
inline DataSplit seeded_split(const Dataset& data, std::size_t train_size,
                              std::size_t validation_size, std::uint64_t seed) {
  require(train_size + validation_size <= data.size(), "seeded_split: not enough examples");
  auto order = iota_indices(data.size());
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));
  const std::span<const std::size_t> all(order);
  return {select_rows(data, all.subspan(0, train_size)),
          select_rows(data, all.subspan(train_size, validation_size))};
}

/// Synthetic classification data: inputs uniform on [0,1), labels from the
/// argmax of a random linear teacher.
inline Dataset synthetic_classification(std::size_t examples, std::size_t inputs,
                                        std::size_t classes, std::uint64_t seed) {
  require(examples >= 1 && inputs >= 1 && classes >= 1, "synthetic_classification: empty shape");
  Rng rng(seed);
  Matrix teacher(classes, inputs);
  for (std::size_t c = 0; c < classes; ++c)
    for (std::size_t i = 0; i < inputs; ++i) teacher(c, i) = rng.normal();
  Dataset data{Matrix(examples, inputs), Matrix(examples, classes)};
  for (std::size_t k = 0; k < examples; ++k) {
    auto row = data.inputs.row(k);
    for (double& v : row) v = rng.uniform01();
    std::size_t best = 0;
    double best_score = 0.0;
    for (std::size_t c = 0; c < classes; ++c) {
      double score = 0.0;
      for (std::size_t i = 0; i < inputs; ++i) score += teacher(c, i) * (row[i] - 0.5);
      if (c == 0 || score > best_score) {
        best = c;
        best_score = score;
      }
    }
    data.targets(k, best) = 1.0;
  }
  return data;
}

}  // namespace twophase
