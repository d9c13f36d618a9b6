#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "twophase/diagnostics.hpp"
#include "twophase/mlp.hpp"
#include "twophase/objectives.hpp"
#include "twophase/toy_models.hpp"

namespace twophase {
namespace {

TEST(Overdetermination, Examples) {
  EXPECT_EQ(overdetermination_q(100, 10, 250), 4.0);
  EXPECT_EQ(overdetermination_q(777, 1, 777), 1.0);
  const std::vector<std::size_t> dims{784, 32, 10};
  const std::size_t p = parameter_count(dims);
  EXPECT_EQ(p, 784u * 32u + 32u + 32u * 10u + 10u);
  EXPECT_EQ(overdetermination_q(60000, 10, p), 600000.0 / 25450.0);
  EXPECT_NEAR(overdetermination_q(60000, 10, p), 23.576, 1e-3);
  EXPECT_THROW(overdetermination_q(1, 1, 0), ContractViolation);
}

TEST(Overdetermination, ExactOnIntegers) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t k = 1 + rng.below(100000), m = 1 + rng.below(20), p = 1 + rng.below(100000);
    EXPECT_EQ(overdetermination_q(k, m, p), static_cast<double>(k * m) / static_cast<double>(p));
  }
}

Matrix diagonal(std::initializer_list<double> entries) {
  Matrix a(entries.size(), entries.size());
  std::size_t i = 0;
  for (double v : entries) a(i, i) = v, ++i;
  return a;
}

TEST(Curvature, IdentityHessian) {
  const QuadraticObjective f(diagonal({1, 1, 1}), Vector(3));
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    Vector theta(3), d(3);
    for (double& v : theta) v = rng.uniform(-5.0, 5.0);
    for (double& v : d) v = rng.normal();
    d = scaled(1.0 / norm(d), d);
    EXPECT_NEAR(directional_curvature(f, theta, d), 1.0, 1e-6);
  }
}

TEST(Curvature, DiagonalHessian) {
  const QuadraticObjective f(diagonal({1, 4}), Vector(2));
  EXPECT_NEAR(directional_curvature(f, Vector{0.3, -0.2}, basis(2, 1)), 4.0, 1e-6);
}

TEST(Curvature, ToyMinimumConvexMarginConcave) {
  const ToyTanhTask task{0.25, 0.6, 100};
  const auto f = ScalarObjective::toy(task);
  const double p_min = toy_minimizer(task);
  const double p_far = 3.0 / task.x;
  for (double s : {1.0, -1.0}) {
    const double c_min = directional_curvature(f, Vector{p_min}, Vector{s});
    const double c_far = directional_curvature(f, Vector{p_far}, Vector{s});
    EXPECT_GT(c_min, 0.0);
    EXPECT_LT(c_far, 0.0);
    // Symbolic second derivative as oracle.
    EXPECT_NEAR(c_min, toy_loss_curvature(p_min, task), 1e-4 * std::abs(c_min));
    EXPECT_NEAR(c_far, toy_loss_curvature(p_far, task), 1e-4 * std::abs(c_far));
  }
}

TEST(Curvature, RandomSpdQuadratics) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(10);
    Matrix b(n, n), a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = rng.normal();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = i == j ? 0.1 : 0.0;
        for (std::size_t k = 0; k < n; ++k) s += b(i, k) * b(j, k);
        a(i, j) = s;
      }
    Vector center(n), theta(n), d(n);
    for (double& v : center) v = rng.normal();
    for (double& v : theta) v = rng.normal();
    for (double& v : d) v = rng.normal();
    d = scaled(1.0 / norm(d), d);
    const QuadraticObjective f(a, center);
    EXPECT_NEAR(directional_curvature(f, theta, d), dot(d, f.apply(d)), 1e-6);
  }
}

TEST(Curvature, Errors) {
  const QuadraticObjective f(diagonal({1, 1}), Vector(2));
  EXPECT_THROW(directional_curvature(f, Vector(2), Vector{1.0, 1.0}), ContractViolation);
  const ScalarObjective bad([](double p) {
    return p > 0.0 ? LossGrad{std::numeric_limits<double>::quiet_NaN(), 0.0} : LossGrad{p, 1.0};
  });
  EXPECT_THROW(directional_curvature(bad, Vector{0.0}, Vector{1.0}), ProbeError);
}

TEST(Curvature, ProbeEpsilonScales) {
  const ConvexityProbe probe;
  EXPECT_DOUBLE_EQ(probe.epsilon(Vector{0.1, -0.2}), 1e-5);
  EXPECT_DOUBLE_EQ(probe.epsilon(Vector{0.1, -30.0}), 3e-4);
  EXPECT_EQ(probe.directions_per_point, 8u);
  Rng rng(4);
  const QuadraticObjective f(diagonal({2, 2, 2}), Vector(3));
  const auto c = random_direction_curvatures(f, Vector{1, 2, 3}, probe, rng);
  ASSERT_EQ(c.size(), 8u);
  for (double v : c) EXPECT_NEAR(v, 2.0, 1e-6);
}

TrainingTrace trace_of(std::initializer_list<std::pair<double, double>> rows) {
  TrainingTrace t;
  std::size_t e = 0;
  for (auto [loss, gn] : rows) {
    TraceRow r;
    r.epoch = ++e;
    r.loss = loss;
    r.grad_norm = gn;
    t.rows.push_back(r);
  }
  return t;
}

TEST(GradVsLoss, Examples) {
  const auto single = grad_vs_loss(trace_of({{2.0, 1.0}}));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0], std::make_pair(2.0, 1.0));

  const auto ordered = grad_vs_loss(trace_of({{5, 1}, {4, 2}, {3, 3}}));
  EXPECT_EQ(ordered[0].second, 1.0);
  EXPECT_EQ(ordered[2].second, 3.0);

  const auto mixed = grad_vs_loss(trace_of({{1, 1}, {3, 2}, {3, 5}, {2, 4}}));
  EXPECT_EQ(mixed.size(), 4u);
  EXPECT_EQ(mixed[0], std::make_pair(3.0, 2.0));
  EXPECT_EQ(mixed[1], std::make_pair(3.0, 5.0));
  EXPECT_EQ(mixed[3], std::make_pair(1.0, 1.0));
  EXPECT_THROW(grad_vs_loss(TrainingTrace{}), ContractViolation);
}

TEST(GradVsLoss, ConvexDescentIsMonotone) {
  const ScalarObjective f([](double p) { return LossGrad{(p - 1) * (p - 1), 2 * (p - 1)}; });
  const TrainingTrace t = descent_trace(f, Vector{-3.0}, 0.1, 200);
  const auto pairs = grad_vs_loss(t);
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    EXPECT_LE(pairs[i].first, pairs[i - 1].first);
    EXPECT_LE(pairs[i].second, pairs[i - 1].second);
  }
}

TEST(CountPeaks, Examples) {
  EXPECT_EQ(count_peaks(std::vector<double>{1, 2, 3, 2, 1}, 1), 1u);
  EXPECT_EQ(count_peaks(std::vector<double>{1, 2, 3, 4, 5}, 5), 0u);
  EXPECT_EQ(count_peaks(std::vector<double>{5, 4, 3}, 1), 0u);
  EXPECT_EQ(count_peaks(std::vector<double>{1, 3, 2, 4, 1}, 1), 2u);
  EXPECT_EQ(count_peaks(std::vector<double>{1, 3, 3, 1}, 1), 1u);
  EXPECT_THROW(count_peaks(std::vector<double>{}, 1), ContractViolation);
}

TEST(CountPeaks, SmoothingRemovesZigzag) {
  std::vector<double> s;
  for (int i = 0; i < 60; ++i) {
    const double base = i < 30 ? i : 60 - i;
    s.push_back(base + (i % 2 == 0 ? 0.8 : -0.8));
  }
  EXPECT_GT(count_peaks(s, 1), 1u);
  EXPECT_EQ(count_peaks(s, 5), 1u);
}

TEST(CountPeaksProperty, InvariantUnderPositiveScaling) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> s(1 + rng.below(40));
    for (double& v : s) v = std::round(rng.uniform(0.0, 8.0));
    const double c = std::ldexp(1.0, static_cast<int>(rng.below(20)) - 10);
    std::vector<double> scaled_s;
    for (double v : s) scaled_s.push_back(c * v);
    const std::size_t w = 1 + rng.below(5);
    EXPECT_EQ(count_peaks(s, w), count_peaks(scaled_s, w));
  }
}

TEST(DescentTrace, ToyMarginSinglePeak) {
  for (const auto& task : gen_toy_tasks(1, 5)) {
    const auto f = ScalarObjective::toy(task);
    const double scale = task.units * task.x;
    for (double side : {1.0, -1.0}) {
      const TrainingTrace t =
          descent_trace(f, Vector{side * 3.0 / std::abs(task.x)}, 0.25 / (scale * scale), 100000);
      std::vector<double> gns;
      for (const auto& p : grad_vs_loss(t)) gns.push_back(p.second);
      EXPECT_EQ(count_peaks(gns, 5), 1u) << task.x << " " << side;
      EXPECT_LT(t.back().loss, 1e-12);
    }
  }
}

TEST(DescentTrace, RecordsPath) {
  const ScalarObjective f([](double p) { return LossGrad{p * p, 2 * p}; });
  std::vector<Vector> path;
  const TrainingTrace t = descent_trace(f, Vector{1.0}, 0.25, 3, 1e-8, &path);
  ASSERT_EQ(path.size(), 3u);
  EXPECT_EQ(path[1][0], 0.5);
  EXPECT_EQ(path[2][0], 0.25);
  EXPECT_EQ(t.rows[0].phase, Phase::descent);
  EXPECT_DOUBLE_EQ(t.rows[2].cost_units, 6.0);
}

}  // namespace
}  // namespace twophase
