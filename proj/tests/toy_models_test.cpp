#include <gtest/gtest.h>

#include <cmath>

#include "twophase/toy_models.hpp"

namespace twophase {
namespace {

double central(auto&& f, double p, double h = 1e-6) { return (f(p + h) - f(p - h)) / (2.0 * h); }

TEST(ToyTanh, ClosedFormAtZero) {
  const ToyTanhTask task{0.25, 0.5, 100};
  const LossGrad lg = toy_loss_grad(0.0, task);
  EXPECT_DOUBLE_EQ(lg.loss, 0.25);
  EXPECT_DOUBLE_EQ(lg.grad, -25.0);
}

TEST(ToyTanh, InterpolationPointIsStationary) {
  const ToyTanhTask task{0.3, 0.7, 100};
  const double p = toy_minimizer(task);
  const LossGrad lg = toy_loss_grad(p, task);
  EXPECT_LT(lg.loss, 1e-24);
  EXPECT_LT(std::abs(lg.grad), 1e-9);
}

TEST(ToyTanh, GradientMatchesCentralDifference) {
  const ToyTanhTask task{0.1, 0.3, 100};
  const double fd = central([&](double p) { return toy_loss_grad(p, task).loss; }, 1.0);
  const double g = toy_loss_grad(1.0, task).grad;
  EXPECT_LT(std::abs(g - fd) / std::abs(fd), 1e-6);
}

TEST(ToyTanh, CurvatureMatchesDifferenceOfGradient) {
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const ToyTanhTask task{rng.uniform_open(-0.5, 0.5), rng.uniform_open(0.0, 1.0), 100};
    const double p = rng.uniform(-6.0, 6.0);
    const double fd = central([&](double q) { return toy_loss_grad(q, task).grad; }, p, 1e-5);
    const double c = toy_loss_curvature(p, task);
    EXPECT_LE(std::abs(c - fd), 1e-5 * std::max(1.0, std::abs(c))) << p;
  }
}

TEST(ToyTanh, LossNonnegativeAndZeroOnlyAtFit) {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const ToyTanhTask task{rng.uniform_open(-0.5, 0.5), rng.uniform_open(0.0, 1.0), 100};
    const double p = rng.uniform(-6.0, 6.0);
    const double l = toy_loss_grad(p, task).loss;
    EXPECT_GE(l, 0.0);
    if (l == 0.0) EXPECT_EQ(100.0 * std::tanh(p * task.x), task.r);
  }
}

TEST(ToyTasks, Deterministic) {
  const auto a = gen_toy_tasks(1, 5), b = gen_toy_tasks(1, 5), c = gen_toy_tasks(2, 5);
  ASSERT_EQ(a.size(), 5u);
  bool differs = false;
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(a[i].x, b[i].x);
    EXPECT_EQ(a[i].r, b[i].r);
    EXPECT_EQ(a[i].units, 100);
    differs = differs || a[i].x != c[i].x || a[i].r != c[i].r;
  }
  EXPECT_TRUE(differs);
  EXPECT_THROW(gen_toy_tasks(1, 0), ContractViolation);
}

TEST(ToyTasks, EmpiricalMoments) {
  const auto tasks = gen_toy_tasks(1, 1000);
  double mx = 0.0, mr = 0.0;
  for (const auto& t : tasks) {
    EXPECT_GT(t.x, -0.5);
    EXPECT_LT(t.x, 0.5);
    EXPECT_GT(t.r, 0.0);
    EXPECT_LT(t.r, 1.0);
    mx += t.x;
    mr += t.r;
  }
  EXPECT_NEAR(mx / 1000.0, 0.0, 0.05);
  EXPECT_NEAR(mr / 1000.0, 0.5, 0.05);
}

TEST(TwoLayer, VanishesAtZero) {
  for (double c : {0.4, 0.5, 0.6}) {
    const TwoLayerTask task{0.5, 0.3, c};
    EXPECT_DOUBLE_EQ(twolayer_loss_grad(0.0, task).loss, 0.09);
  }
}

TEST(TwoLayer, ZeroWeightReducesToNestedTanh) {
  const TwoLayerTask task{0.37, 0.2, 0.0};
  for (double p : {-4.0, -1.0, 0.5, 3.0}) {
    const double y = std::tanh(std::tanh(p * task.x));
    EXPECT_NEAR(twolayer_loss_grad(p, task).loss, (y - task.r) * (y - task.r), 1e-15);
  }
}

TEST(TwoLayer, GradientMatchesCentralDifference) {
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const TwoLayerTask task{rng.uniform_open(-1.0, 1.0), rng.uniform_open(0.0, 1.0),
                            rng.uniform(0.3, 0.7)};
    const double p = rng.uniform(-6.0, 6.0);
    const double fd = central([&](double q) { return twolayer_loss_grad(q, task).loss; }, p);
    const double g = twolayer_loss_grad(p, task).grad;
    EXPECT_LE(std::abs(g - fd), 1e-5 * std::max(1e-4, std::abs(fd)));
  }
}

// Dense grid oracle: local minima are sign changes of dloss/dp from - to +.
std::size_t grid_minima(const TwoLayerTask& task, std::size_t points = 10000) {
  std::size_t minima = 0;
  double prev = twolayer_loss_grad(-6.0, task).grad;
  for (std::size_t i = 1; i < points; ++i) {
    const double p = -6.0 + 12.0 * static_cast<double>(i) / static_cast<double>(points - 1);
    const double g = twolayer_loss_grad(p, task).grad;
    if (prev < 0.0 && g >= 0.0) ++minima;
    prev = g;
  }
  return minima;
}

TEST(TwoLayer, MinimaEmergeAsWeightGrows) {
  EXPECT_EQ(grid_minima({0.5, 0.1, 0.40}), 1u);
  EXPECT_GE(grid_minima({0.5, 0.1, 0.55}), 2u);
  EXPECT_GE(grid_minima({0.5, 0.1, 0.60}), 2u);
}

}  // namespace
}  // namespace twophase
