#pragma once

// Central finite differences for checking analytic gradients.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>

#include "twophase/numerics.hpp"

namespace twophase {

/// (f(x + h e_i) - f(x - h e_i)) / 2h for every coordinate i.
inline Vector central_difference(const std::function<double(const Vector&)>& f, const Vector& x,
                                 double h = 1e-6) {
  Vector g(x.size());
  Vector probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = f(probe);
    probe[i] = x[i] - h;
    const double down = f(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

/// |a - b| / max(|a|, |b|, floor). The floor keeps components that are
/// zero up to difference noise from dominating; callers scale it with the
/// loss magnitude.
inline double relative_error(double a, double b, double floor) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

/// Floor for relative_error matching the rounding noise of a central
/// difference with step 1e-6 on a loss of magnitude |loss|.
inline double difference_floor(double loss) { return 1e-4 * std::max(1.0, std::abs(loss)); }

}  // namespace twophase
