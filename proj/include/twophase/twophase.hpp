#pragma once

// Two-phase training: Adam while the smoothed full-batch gradient norm is
// still near its running peak, then a one-way swap to nonlinear conjugate
// gradient once the norm has fallen below gnfact times that peak.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "twophase/adam.hpp"
#include "twophase/cg.hpp"
#include "twophase/cost_meter.hpp"
#include "twophase/line_search.hpp"
#include "twophase/numerics.hpp"
#include "twophase/objective.hpp"
#include "twophase/random.hpp"
#include "twophase/smoothing.hpp"
#include "twophase/trace.hpp"

namespace twophase {

class SwapDetector {
 public:
  explicit SwapDetector(double gnfact = 0.9, std::size_t window = 5)
      : gnfact_(gnfact), window_(window) {
    require(gnfact > 0.0 && gnfact < 1.0, "SwapDetector: gnfact outside (0,1)");
    require(window >= 1, "SwapDetector: window must be positive");
  }

  /// Feeds one raw gradient norm and returns the phase for what follows.
  Phase observe(double gn_raw) {
    require(std::isfinite(gn_raw) && gn_raw >= 0.0,
            "SwapDetector: gradient norm must be finite and nonnegative");
    history_.push_back(gn_raw);
    last_ = smooth(history_, window_);
    gnmax_ = std::max(last_, gnmax_);
    if (adam_active_) adam_active_ = last_ > gnmax_ * gnfact_;
    return phase();
  }

  void force_swap() { adam_active_ = false; }

  [[nodiscard]] Phase phase() const { return adam_active_ ? Phase::adam : Phase::cg; }
  [[nodiscard]] bool adam_active() const { return adam_active_; }
  [[nodiscard]] double gnmax() const { return gnmax_; }
  [[nodiscard]] double last_smoothed() const { return last_; }
  [[nodiscard]] double gnfact() const { return gnfact_; }
  [[nodiscard]] std::size_t window() const { return window_; }
  [[nodiscard]] const std::vector<double>& history() const { return history_; }

 private:
  double gnfact_;
  std::size_t window_;
  double gnmax_ = 0.0;
  double last_ = 0.0;
  bool adam_active_ = true;
  std::vector<double> history_;
};

enum class SwapMode { detector, fixed };
enum class RunMode { two_phase, adam_only, cg_only };

inline const char* run_mode_name(RunMode m) {
  switch (m) {
    case RunMode::two_phase: return "two-phase";
    case RunMode::adam_only: return "adam";
    case RunMode::cg_only: return "cg";
  }
  return "?";
}

struct TwoPhaseConfig {
  std::size_t total_epochs = 100;
  double gnfact = 0.9;
  std::size_t smoothing_window = 5;
  std::optional<std::size_t> max_adam_epochs;  // unset: total_epochs - 1
  SwapMode swap_mode = SwapMode::detector;
  double fixed_adam_fraction = 0.3;  // used when swap_mode == fixed
  std::optional<double> cost_budget;  // no new epoch starts once reached
  AdamConfig adam;
  LineSearchConfig ls;
  CgUpdate cg_update = CgUpdate::polak_ribiere_plus;
  std::uint64_t seed = 1;

  void validate() const {
    require(total_epochs >= 2, "TwoPhaseConfig: total_epochs must be at least 2");
    require(gnfact > 0.0 && gnfact < 1.0, "TwoPhaseConfig: gnfact outside (0,1)");
    require(smoothing_window >= 1, "TwoPhaseConfig: smoothing_window must be positive");
    require(fixed_adam_fraction > 0.0 && fixed_adam_fraction < 1.0,
            "TwoPhaseConfig: fixed_adam_fraction outside (0,1)");
    require(!cost_budget || *cost_budget > 0.0, "TwoPhaseConfig: cost_budget must be positive");
    adam.validate();
    ls.validate();
  }

  [[nodiscard]] std::size_t adam_epoch_cap() const {
    return max_adam_epochs.value_or(total_epochs - 1);
  }
  [[nodiscard]] std::size_t fixed_adam_epochs() const {
    const auto e = static_cast<std::size_t>(
        std::llround(fixed_adam_fraction * static_cast<double>(total_epochs)));
    return std::clamp<std::size_t>(e, 1, total_epochs - 1);
  }
};

/// Stream used for mini-batch shuffling, kept apart from weight init.
inline std::uint64_t shuffle_seed(std::uint64_t seed) { return seed ^ 0x9E3779B97F4A7C15ull; }

/// Runs `mode` on the objective for up to total_epochs (or until the cost
/// budget is spent), updating `params` in place.
///
/// Adam epochs make one shuffled mini-batch pass and then evaluate the
/// full-batch gradient once; its norm feeds the detector and the trace. CG
/// epochs make one conjugate gradient step. In two-phase mode the first CG
/// epoch reuses the last full-batch evaluation of the Adam phase.
template <BatchObjective F>
TrainingTrace run_training(RunMode mode, const F& objective, Vector& params,
                           const TwoPhaseConfig& cfg, CostMeter& meter) {
  cfg.validate();
  require(params.size() == objective.dimension(), "run_training: parameter dimension mismatch");
  require(objective.example_count() > 0, "run_training: empty data");

  const Metered<F> metered(objective, meter);
  Rng rng(shuffle_seed(cfg.seed));
  SwapDetector detector(cfg.gnfact, cfg.smoothing_window);
  AdamState adam(params.size());
  CgState cg;
  cg.update = cfg.cg_update;

  TrainingTrace trace;
  trace.seed = cfg.seed;
  Phase phase = mode == RunMode::cg_only ? Phase::cg : Phase::adam;
  std::uint32_t pending_flags = 0;
  std::size_t stalls = 0;

  for (std::size_t epoch = 1; epoch <= cfg.total_epochs; ++epoch) {
    if (cfg.cost_budget && meter.cost_units() >= *cfg.cost_budget) break;
    TraceRow row;
    row.epoch = epoch;
    row.phase = phase;
    row.flags = pending_flags;
    pending_flags = 0;

    if (phase == Phase::adam) {
      adam_epoch(metered, params, adam, cfg.adam, rng);
      Evaluation e = metered.evaluate(params);
      row.loss = e.loss;
      row.grad_norm = norm(e.gradient);
      if (!std::isfinite(row.loss) || !std::isfinite(row.grad_norm)) {
        row.flags |= TraceFlag::non_finite;
        row.cost_units = meter.cost_units();
        trace.rows.push_back(row);
        break;
      }
      detector.observe(row.grad_norm);
      row.gnmax = detector.gnmax();

      if (mode == RunMode::two_phase) {
        bool swap = false;
        if (cfg.swap_mode == SwapMode::detector) {
          swap = detector.phase() == Phase::cg;
          if (!swap && epoch >= cfg.adam_epoch_cap()) {
            detector.force_swap();
            pending_flags |= TraceFlag::forced_swap;
            swap = true;
          }
        } else {
          swap = epoch >= cfg.fixed_adam_epochs();
        }
        if (swap) {
          phase = Phase::cg;
          cg.seed(e);
        }
      }
    } else {
      if (!cg.initialized) cg.seed(metered.evaluate(params));
      if (!trace.swap_epoch && mode == RunMode::two_phase) trace.swap_epoch = epoch;
      const CgStepResult r = cg_step(cg, params, metered, cfg.ls);
      row.loss = r.loss;
      row.grad_norm = r.grad_norm;
      if (mode == RunMode::cg_only && std::isfinite(r.grad_norm)) detector.observe(r.grad_norm);
      row.gnmax = detector.gnmax();
      if (r.no_bracket) row.flags |= TraceFlag::no_bracket;
      if (r.stalled) {
        row.flags |= TraceFlag::stalled;
        if (++stalls >= 3) row.flags |= TraceFlag::stall_run;
      } else {
        stalls = 0;
      }
      if (r.converged) row.flags |= TraceFlag::converged;
      if (!std::isfinite(row.loss) || !std::isfinite(row.grad_norm)) {
        row.flags |= TraceFlag::non_finite;
        row.cost_units = meter.cost_units();
        trace.rows.push_back(row);
        break;
      }
    }
    row.cost_units = meter.cost_units();
    trace.rows.push_back(row);
    if (row.has(TraceFlag::converged)) break;
  }
  return trace;
}

template <BatchObjective F>
TrainingTrace run_two_phase(const F& objective, Vector& params, const TwoPhaseConfig& cfg,
                            CostMeter& meter) {
  return run_training(RunMode::two_phase, objective, params, cfg, meter);
}

template <BatchObjective F>
TrainingTrace run_baseline(RunMode mode, const F& objective, Vector& params,
                           const TwoPhaseConfig& cfg, CostMeter& meter) {
  require(mode != RunMode::two_phase, "run_baseline: mode must be a single algorithm");
  return run_training(mode, objective, params, cfg, meter);
}

}  // namespace twophase
