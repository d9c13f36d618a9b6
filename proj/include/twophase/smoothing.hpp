#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "twophase/numerics.hpp"

namespace twophase {

/// Trailing moving average of the last min(window, size) values.
inline double smooth(std::span<const double> history, std::size_t window) {
  require(!history.empty(), "smooth: empty history");
  require(window >= 1, "smooth: window must be positive");
  const std::size_t n = std::min(window, history.size());
  double sum = 0.0;
  for (std::size_t i = history.size() - n; i < history.size(); ++i) sum += history[i];
  return sum / static_cast<double>(n);
}

/// Element i is smooth(series[0..i], window).
inline std::vector<double> smooth_series(std::span<const double> series, std::size_t window) {
  std::vector<double> out;
  out.reserve(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) out.push_back(smooth(series.first(i + 1), window));
  return out;
}

}  // namespace twophase
