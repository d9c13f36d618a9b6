#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace twophase {

enum class Phase { adam, cg, descent };

inline const char* phase_name(Phase p) {
  switch (p) {
    case Phase::adam: return "adam";
    case Phase::cg: return "cg";
    case Phase::descent: return "gd";
  }
  return "?";
}

namespace TraceFlag {
inline constexpr std::uint32_t forced_swap = 1u << 0;  // swap forced by max_adam_epochs
inline constexpr std::uint32_t no_bracket = 1u << 1;   // CG direction failed to bracket
inline constexpr std::uint32_t stalled = 1u << 2;      // CG could not move this epoch
inline constexpr std::uint32_t stall_run = 1u << 3;    // three stalled CG epochs in a row
inline constexpr std::uint32_t converged = 1u << 4;    // gradient norm reached zero
inline constexpr std::uint32_t non_finite = 1u << 5;   // loss or gradient not finite
}  // namespace TraceFlag

struct TraceRow {
  std::size_t epoch = 0;
  Phase phase = Phase::adam;
  double loss = 0.0;
  double grad_norm = 0.0;
  double gnmax = 0.0;
  double cost_units = 0.0;
  std::uint32_t flags = 0;

  [[nodiscard]] bool has(std::uint32_t flag) const { return (flags & flag) != 0; }
};

/// Per-epoch record of one optimization run.
struct TrainingTrace {
  std::vector<TraceRow> rows;
  std::optional<std::size_t> swap_epoch;  // epoch of the first CG row
  std::uint64_t seed = 0;
  std::string config_digest;

  [[nodiscard]] bool empty() const { return rows.empty(); }
  [[nodiscard]] const TraceRow& back() const { return rows.back(); }
  [[nodiscard]] bool has_flag(std::uint32_t flag) const {
    for (const auto& r : rows)
      if (r.has(flag)) return true;
    return false;
  }
};

/// Loss of the last row whose cumulative cost does not exceed `budget`;
/// falls back to the first row.
inline double loss_at_budget(const TrainingTrace& trace, double budget) {
  double loss = trace.rows.empty() ? 0.0 : trace.rows.front().loss;
  for (const auto& r : trace.rows) {
    if (r.cost_units > budget) break;
    loss = r.loss;
  }
  return loss;
}

}  // namespace twophase
