#pragma once

// The four experiment commands. Each takes a resolved config and an output
// directory and returns a process exit code.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "twophase/trace.hpp"

namespace twophase::cli {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_landscape(const json& cfg, const std::filesystem::path& out_dir, std::ostream& out);
int cmd_train(const json& cfg, const std::filesystem::path& out_dir, std::ostream& out);
int cmd_compare(const json& cfg, const std::filesystem::path& out_dir, std::ostream& out);
int cmd_gradcheck(const json& cfg, const std::filesystem::path& out_dir, std::ostream& out);

/// The three arms of a comparison run at one cost budget.
struct CompareResult {
  TrainingTrace two_phase;
  TrainingTrace adam;
  TrainingTrace cg;
  double budget = 0.0;
  double final_two_phase = 0.0;
  double final_adam = 0.0;
  double final_cg = 0.0;

  [[nodiscard]] bool two_phase_le_adam() const { return final_two_phase <= final_adam; }
  [[nodiscard]] bool cg_worst() const {
    return final_cg > final_adam && final_cg > final_two_phase;
  }
  [[nodiscard]] bool adam_lt_cg() const { return final_adam < final_cg; }
};

/// Runs AdamOnly, CgOnly and TwoPhase from the same start with the same
/// seed. Without train.cost_budget the budget is four units per epoch,
/// the cost of one Adam epoch plus its full-batch gradient check.
CompareResult compare_modes(const json& cfg);

struct GradcheckReport {
  std::string family;
  std::size_t configs = 0;
  double max_rel_error = 0.0;
  std::vector<std::string> offending;  // "config=i param=j rel_error=e"

  [[nodiscard]] bool passed(double tolerance) const { return max_rel_error < tolerance; }
};

std::vector<GradcheckReport> run_gradcheck(const json& cfg);

/// Local minima of a sampled loss: sign changes of the derivative from
/// negative to nonnegative.
std::size_t grid_minima(const std::vector<double>& dloss);

}  // namespace twophase::cli
