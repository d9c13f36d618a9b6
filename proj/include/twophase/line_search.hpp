#pragma once

// Derivative-free line search: geometric bracketing from zero followed by
// golden-section reduction of the bracket.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "twophase/numerics.hpp"

namespace twophase {

struct LineSearchConfig {
  double initial_step = 1.0;
  double growth = 2.0;
  double tol = 1e-4;
  std::size_t max_evals = 100;
  // Start each CG line search from the previous accepted step length
  // instead of initial_step.
  bool reuse_step = false;

  void validate() const {
    require(initial_step > 0.0, "LineSearchConfig: initial_step must be positive");
    require(growth > 1.0, "LineSearchConfig: growth must exceed 1");
    require(tol > 0.0, "LineSearchConfig: tol must be positive");
    require(max_evals > 0, "LineSearchConfig: max_evals must be positive");
  }
};

/// a < b < c with f(b) below both f(a) and f(c).
struct Bracket {
  double a = 0.0, b = 0.0, c = 0.0;
  double fa = 0.0, fb = 0.0, fc = 0.0;
  std::size_t evals = 0;
};

struct LineMinimum {
  double alpha = 0.0;
  double value = 0.0;
  std::size_t evals = 0;
  std::size_t iterations = 0;
  bool converged = true;  // false when max_evals ran out first
};

inline constexpr double kGoldenSmall = 0.38196601125010515;  // (3 - sqrt 5) / 2
inline constexpr double kGoldenLarge = 0.61803398874989485;  // (sqrt 5 - 1) / 2

namespace detail {
inline double finite_or_inf(double v) {
  return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}
// Absolute floor on the golden-section termination width.
inline constexpr double kLineSearchFloor = 1e-12;
}  // namespace detail

/// Brackets a minimum of phi on (0, inf) given phi(0) = f0.
///
/// If phi(initial_step) < f0 the step grows geometrically until phi rises.
/// Otherwise the step is halved up to ten times looking for any point below
/// f0. Returns nullopt when neither succeeds within max_evals; a function
/// that increases away from zero has no interior bracket.
template <typename Phi>
std::optional<Bracket> bracket_minimum(Phi&& phi, double f0, const LineSearchConfig& cfg) {
  Bracket br;
  double step = cfg.initial_step;
  double f1 = detail::finite_or_inf(phi(step));
  br.evals = 1;

  if (f1 < f0) {
    double a = 0.0, fa = f0, b = step, fb = f1;
    while (br.evals < cfg.max_evals) {
      const double c = b * cfg.growth;
      const double fc = detail::finite_or_inf(phi(c));
      ++br.evals;
      if (fc > fb) {
        br.a = a, br.b = b, br.c = c, br.fa = fa, br.fb = fb, br.fc = fc;
        return br;
      }
      a = b, fa = fb, b = c, fb = fc;
    }
    return std::nullopt;
  }

  double outer = step, f_outer = f1;
  for (int k = 1; k <= 10 && br.evals < cfg.max_evals; ++k) {
    const double inner = step * std::ldexp(1.0, -k);
    const double f_inner = detail::finite_or_inf(phi(inner));
    ++br.evals;
    if (f_inner < f0) {
      br.a = 0.0, br.b = inner, br.c = outer;
      br.fa = f0, br.fb = f_inner, br.fc = f_outer;
      return br;
    }
    outer = inner, f_outer = f_inner;
  }
  return std::nullopt;
}

template <typename Phi>
std::optional<Bracket> bracket_minimum(Phi&& phi, const LineSearchConfig& cfg) {
  const double f0 = phi(0.0);
  require(std::isfinite(f0), "bracket_minimum: phi(0) is not finite");
  auto br = bracket_minimum(phi, f0, cfg);
  if (br) ++br->evals;
  return br;
}

/// Golden-section search inside [a, c]. Each iteration keeps the better
/// interior point and shrinks the interval by kGoldenLarge. Stops once the
/// width is below tol * |alpha| (plus a small absolute floor), or when
/// max_evals is spent. The returned point is never worse than the
/// bracket's middle point.
///
/// When `widths` is given, the interval width is appended before the first
/// and after every iteration.
template <typename Phi>
LineMinimum golden_section(Phi&& phi, const Bracket& br, const LineSearchConfig& cfg,
                           std::vector<double>* widths = nullptr) {
  require(br.a < br.b && br.b < br.c, "golden_section: invalid bracket");
  LineMinimum out;
  double a = br.a, c = br.c;
  double x1 = a + kGoldenSmall * (c - a);
  double x2 = a + kGoldenLarge * (c - a);
  double f1 = detail::finite_or_inf(phi(x1));
  double f2 = detail::finite_or_inf(phi(x2));
  out.evals = 2;
  if (widths) widths->push_back(c - a);

  auto width_ok = [&] {
    return (c - a) <= 0.5 * cfg.tol * (std::abs(x1) + std::abs(x2)) + detail::kLineSearchFloor;
  };
  while (!width_ok()) {
    if (out.evals >= cfg.max_evals) {
      out.converged = false;
      break;
    }
    if (f1 < f2) {
      c = x2;
      x2 = x1, f2 = f1;
      x1 = a + kGoldenSmall * (c - a);
      f1 = detail::finite_or_inf(phi(x1));
    } else {
      a = x1;
      x1 = x2, f1 = f2;
      x2 = a + kGoldenLarge * (c - a);
      f2 = detail::finite_or_inf(phi(x2));
    }
    ++out.evals;
    ++out.iterations;
    if (widths) widths->push_back(c - a);
  }

  out.alpha = br.b, out.value = br.fb;
  if (f1 < out.value) out.alpha = x1, out.value = f1;
  if (f2 < out.value) out.alpha = x2, out.value = f2;
  return out;
}

}  // namespace twophase
