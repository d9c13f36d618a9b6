#include <gtest/gtest.h>

#include <cmath>

#include "twophase/adam.hpp"
#include "twophase/objectives.hpp"

namespace twophase {
namespace {

TEST(Adam, FirstStepIsLrTimesSign) {
  AdamState s(1);
  AdamConfig cfg;
  Vector p{0.5};
  adam_step(s, cfg, p, Vector{2.0});
  // m_hat = 2, v_hat = 4: step = lr * 2 / (2 + eps).
  EXPECT_DOUBLE_EQ(p[0], 0.5 - 1e-3 * 2.0 / (2.0 + 1e-8));
  EXPECT_NEAR(p[0], 0.5 - 0.000999999995, 1e-15);
  EXPECT_EQ(s.t, 1u);
}

TEST(Adam, ZeroGradientLeavesParameters) {
  AdamState s(3);
  AdamConfig cfg;
  Vector p{1.0, -2.0, 3.0};
  adam_step(s, cfg, p, Vector{1.0, 1.0, 1.0});
  const Vector after_first = p;
  const Vector m1 = s.m, v1 = s.v;
  Vector q = p;
  adam_step(s, cfg, q, Vector(3));
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_LT(std::abs(s.m[i]), std::abs(m1[i]));
    EXPECT_LT(s.v[i], v1[i]);
  }
  // From a fresh state a zero gradient is exactly the identity.
  AdamState fresh(3);
  Vector r = after_first;
  adam_step(fresh, cfg, r, Vector(3));
  EXPECT_EQ(r, after_first);
}

TEST(Adam, TwoStepsMatchTranscription) {
  AdamConfig cfg;
  cfg.lr = 0.01;
  AdamState s(2);
  Vector p{1.0, -1.0};
  const Vector g{0.3, -0.7};
  adam_step(s, cfg, p, g);
  adam_step(s, cfg, p, g);

  // Straight-line transcription of the update for two steps.
  for (std::size_t i = 0; i < 2; ++i) {
    double x = i == 0 ? 1.0 : -1.0, m = 0.0, v = 0.0;
    for (int t = 1; t <= 2; ++t) {
      m = 0.9 * m + 0.1 * g[i];
      v = 0.999 * v + 0.001 * g[i] * g[i];
      const double mh = m / (1.0 - std::pow(0.9, t));
      const double vh = v / (1.0 - std::pow(0.999, t));
      x -= 0.01 * mh / (std::sqrt(vh) + 1e-8);
    }
    EXPECT_DOUBLE_EQ(p[i], x);
  }
  EXPECT_EQ(s.t, 2u);
}

TEST(Adam, StateInvariants) {
  Rng rng(1);
  AdamState s(4);
  AdamConfig cfg;
  Vector p(4);
  for (int step = 1; step <= 50; ++step) {
    Vector g(4);
    for (double& v : g) v = rng.normal();
    adam_step(s, cfg, p, g);
    EXPECT_EQ(s.t, static_cast<std::size_t>(step));
    for (double v : s.v) EXPECT_GE(v, 0.0);
  }
}

TEST(Adam, DimensionMismatch) {
  AdamState s(2);
  Vector p(3);
  EXPECT_THROW(adam_step(s, AdamConfig{}, p, Vector(3)), ContractViolation);
}

TEST(Adam, ConfigValidation) {
  AdamConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.beta1 = 1.0;
  EXPECT_THROW(cfg.validate(), ContractViolation);
  cfg = {};
  cfg.batch_size = 0;
  EXPECT_THROW(cfg.validate(), ContractViolation);
}

// Records batch sizes and row coverage.
struct CountingObjective {
  std::size_t k;
  mutable std::vector<std::size_t> sizes;
  mutable std::vector<std::size_t> seen;
  std::size_t dimension() const { return 1; }
  std::size_t example_count() const { return k; }
  double loss(const Vector&) const { return 0.0; }
  Evaluation evaluate(const Vector&) const { return {0.0, Vector(1)}; }
  Evaluation evaluate_batch(const Vector&, std::span<const std::size_t> rows) const {
    sizes.push_back(rows.size());
    seen.insert(seen.end(), rows.begin(), rows.end());
    return {0.0, Vector(1)};
  }
};

TEST(Adam, EpochCoversEveryExampleOnce) {
  CountingObjective f{5000, {}, {}};
  AdamState s(1);
  Vector p(1);
  Rng rng(3);
  EXPECT_EQ(adam_epoch(f, p, s, AdamConfig{}, rng), 10u);
  EXPECT_EQ(f.sizes.back(), 5000u - 9u * 512u);
  std::sort(f.seen.begin(), f.seen.end());
  EXPECT_EQ(f.seen, iota_indices(5000));
}

TEST(Adam, ConvergesOnQuadratic) {
  Matrix a(2, 2);
  a(0, 0) = 2.0, a(1, 1) = 1.0;
  const QuadraticObjective f(a, Vector{1.0, -1.0});
  AdamConfig cfg;
  cfg.lr = 0.05;
  AdamState s(2);
  Vector p(2);
  Rng rng(1);
  for (int e = 0; e < 2000; ++e) adam_epoch(f, p, s, cfg, rng);
  EXPECT_LT(f.loss(p), 1e-6);
}

}  // namespace
}  // namespace twophase
