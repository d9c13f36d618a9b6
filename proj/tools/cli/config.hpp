#pragma once

// Experiment configuration: a JSON document merged over built-in defaults.
// Keys not present in the defaults are rejected.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "twophase/mlp.hpp"
#include "twophase/twophase.hpp"

namespace twophase::cli {

using nlohmann::json;

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitIngestion = 3,
  kExitNumerical = 4,
  kExitGradcheck = 5,
};

/// Error carrying the process exit code it maps to.
class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] int code() const noexcept { return code_; }

 private:
  int code_;
};

json default_config();

/// Merges `user` over the defaults. Throws CliError(kExitUsage) on unknown
/// keys or type mismatches.
json merge_config(const json& user);

/// Reads and merges a config file; `path` may be empty for pure defaults.
/// Relative data paths in the file are resolved against its directory.
json load_config(const std::filesystem::path& path, std::optional<std::int64_t> seed_override);

/// 16 hex digits of the FNV-1a 64-bit hash of the compact dump.
std::string config_digest(const json& resolved);

std::uint64_t config_seed(const json& resolved);
TwoPhaseConfig two_phase_config(const json& resolved);
RunMode parse_mode(const std::string& name);
Activation parse_activation(const std::string& name);

}  // namespace twophase::cli
