#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "twophase/line_search.hpp"
#include "twophase/random.hpp"

namespace twophase {
namespace {

TEST(Bracket, Parabola) {
  const auto phi = [](double a) { return (a - 2.0) * (a - 2.0); };
  const auto br = bracket_minimum(phi, LineSearchConfig{});
  ASSERT_TRUE(br);
  EXPECT_LT(br->a, 2.0);
  EXPECT_GT(br->c, 2.0);
  EXPECT_LT(br->a, br->b);
  EXPECT_LT(br->b, br->c);
  EXPECT_LT(br->fb, br->fa);
  EXPECT_LT(br->fb, br->fc);
}

TEST(Bracket, IncreasingHasNoBracket) {
  const auto phi = [](double a) { return a + a * a; };
  EXPECT_FALSE(bracket_minimum(phi, LineSearchConfig{}));
}

TEST(Bracket, ShrinksWhenFirstStepOvershoots) {
  const auto phi = [](double a) { return (a - 0.01) * (a - 0.01); };
  const auto br = bracket_minimum(phi, LineSearchConfig{});
  ASSERT_TRUE(br);
  EXPECT_LT(br->fb, phi(0.0));
  EXPECT_LT(br->b, 0.02);
}

// Dense grid scan oracle: first interior minimum of phi on (0, 10].
double first_grid_minimum(auto&& phi) {
  const int n = 100000;
  double prev = phi(0.0), cur = phi(1e-4);
  for (int i = 2; i <= n; ++i) {
    const double next = phi(i * 1e-4);
    if (cur < prev && cur <= next) return (i - 1) * 1e-4;
    prev = cur, cur = next;
  }
  return -1.0;
}

TEST(Bracket, CosineContainsPi) {
  const auto phi = [](double a) { return std::cos(a); };
  const double grid = first_grid_minimum(phi);
  EXPECT_NEAR(grid, std::numbers::pi, 1e-4);
  const auto br = bracket_minimum(phi, LineSearchConfig{});
  ASSERT_TRUE(br);
  EXPECT_LT(br->a, grid);
  EXPECT_GT(br->c, grid);
}

TEST(Golden, Parabola) {
  const auto phi = [](double a) { return (a - 2.0) * (a - 2.0); };
  const LineSearchConfig cfg;
  const Bracket br{0.0, 1.0, 5.0, phi(0.0), phi(1.0), phi(5.0), 0};
  const LineMinimum m = golden_section(phi, br, cfg);
  EXPECT_TRUE(m.converged);
  EXPECT_LE(std::abs(m.alpha - 2.0), cfg.tol * (std::abs(m.alpha) + 1e-12));
}

// Bisection oracle for the root of 4 a^3 = 1.
double quartic_root() {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (4.0 * mid * mid * mid - 1.0 < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(Golden, Quartic) {
  const auto phi = [](double a) { return a * a * a * a - a; };
  const double root = quartic_root();
  EXPECT_NEAR(root, 0.62996, 1e-5);
  const LineSearchConfig cfg;
  const Bracket br{0.0, 0.5, 2.0, phi(0.0), phi(0.5), phi(2.0), 0};
  const LineMinimum m = golden_section(phi, br, cfg);
  EXPECT_LE(std::abs(m.alpha - root), cfg.tol * std::abs(m.alpha));
}

TEST(Golden, ContractionFactor) {
  const auto phi = [](double a) { return std::cosh(a - 1.3); };
  LineSearchConfig cfg;
  cfg.tol = 1e-10;
  const Bracket br{0.0, 1.0, 4.0, phi(0.0), phi(1.0), phi(4.0), 0};
  std::vector<double> widths;
  golden_section(phi, br, cfg, &widths);
  ASSERT_GT(widths.size(), 10u);
  for (std::size_t k = 1; k < widths.size(); ++k) {
    EXPECT_NEAR(widths[k] / widths[k - 1], 0.618034, 1e-6);
    EXPECT_NEAR(widths[k], widths[0] * std::pow(kGoldenLarge, static_cast<double>(k)),
                1e-9 * widths[0]);
  }
}

TEST(Golden, BudgetExhaustionFlagsAndKeepsBest) {
  const auto phi = [](double a) { return (a - 2.0) * (a - 2.0); };
  LineSearchConfig cfg;
  cfg.max_evals = 4;
  const Bracket br{0.0, 1.0, 5.0, phi(0.0), phi(1.0), phi(5.0), 0};
  const LineMinimum m = golden_section(phi, br, cfg);
  EXPECT_FALSE(m.converged);
  EXPECT_EQ(m.evals, 4u);
  EXPECT_LE(m.value, br.fb);
}

TEST(Golden, NeverWorseThanBracketMiddle) {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const double center = rng.uniform(0.1, 5.0);
    const double bump = rng.uniform(0.0, 3.0);
    const auto phi = [&](double a) {
      return (a - center) * (a - center) + bump * std::sin(7.0 * a);
    };
    const auto br = bracket_minimum(phi, LineSearchConfig{});
    if (!br) continue;
    const LineMinimum m = golden_section(phi, *br, LineSearchConfig{});
    EXPECT_LE(m.value, br->fb);
    EXPECT_LT(m.value, phi(0.0));
  }
}

TEST(Golden, InvalidBracket) {
  const auto phi = [](double a) { return a; };
  EXPECT_THROW(golden_section(phi, Bracket{1.0, 0.5, 2.0}, LineSearchConfig{}), ContractViolation);
}

TEST(LineSearchConfig, Validation) {
  LineSearchConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.growth = 1.0;
  EXPECT_THROW(cfg.validate(), ContractViolation);
}

}  // namespace
}  // namespace twophase
