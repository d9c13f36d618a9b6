#include "cli/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace twophase::cli {

json default_config() {
  return json::parse(R"({
    "seed": 1,
    "landscape": {
      "family": "toy-tanh",
      "tasks": 5,
      "p_min": -6.0,
      "p_max": 6.0,
      "points": 1200,
      "x": 0.5,
      "r": 0.1,
      "weights": [0.40, 0.45, 0.50, 0.55, 0.60]
    },
    "data": {
      "source": "mnist",
      "images": "data/mnist/mnist10k-images-idx3-ubyte",
      "labels": "data/mnist/mnist10k-labels-idx1-ubyte",
      "train_size": 5000,
      "validation_size": 1000,
      "toy_x": 0.3,
      "toy_r": 0.4,
      "toy_start": null,
      "quadratic_dimension": 10
    },
    "model": {
      "dims": [784, 32, 10],
      "activation": "tanh"
    },
    "train": {
      "mode": "two-phase",
      "epochs": 100,
      "cost_budget": null,
      "gnfact": 0.9,
      "smoothing_window": 5,
      "max_adam_epochs": null,
      "swap_mode": "detector",
      "fixed_adam_fraction": 0.3,
      "cg_update": "pr+"
    },
    "adam": {
      "lr": 0.001,
      "beta1": 0.9,
      "beta2": 0.999,
      "eps": 1e-8,
      "batch_size": 512
    },
    "line_search": {
      "initial_step": 1.0,
      "growth": 2.0,
      "tol": 1e-4,
      "max_evals": 100,
      "reuse_step": false
    },
    "gradcheck": {
      "configs": 100,
      "step": 1e-6,
      "tolerance": 1e-5,
      "corrupt": null
    }
  })");
}

namespace {

bool same_kind(const json& def, const json& val) {
  if (def.is_null() || val.is_null()) return true;
  if (def.is_number() && val.is_number()) {
    if (def.is_number_unsigned()) return val.is_number_unsigned();
    return !def.is_number_integer() || val.is_number_integer();
  }
  return def.type() == val.type();
}

void merge_into(json& base, const json& user, const std::string& where) {
  for (auto it = user.begin(); it != user.end(); ++it) {
    const std::string key = where.empty() ? it.key() : where + "." + it.key();
    if (!base.contains(it.key())) throw CliError(kExitUsage, "unknown config key: " + key);
    json& slot = base[it.key()];
    if (!same_kind(slot, it.value()))
      throw CliError(kExitUsage, "config key " + key + " has the wrong type");
    if (slot.is_object()) {
      merge_into(slot, it.value(), key);
    } else {
      slot = it.value();
    }
  }
}

std::size_t as_count(const json& v, const char* key) {
  if (!v.is_number_unsigned()) throw CliError(kExitUsage, std::string(key) + " must be a count");
  return v.get<std::size_t>();
}

}  // namespace

json merge_config(const json& user) {
  if (!user.is_object()) throw CliError(kExitUsage, "config must be a JSON object");
  json resolved = default_config();
  merge_into(resolved, user, "");
  return resolved;
}

json load_config(const std::filesystem::path& path, std::optional<std::int64_t> seed_override) {
  json user = json::object();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw CliError(kExitUsage, "cannot read config " + path.string());
    try {
      user = json::parse(in);
    } catch (const json::parse_error& e) {
      throw CliError(kExitUsage, "config " + path.string() + ": " + e.what());
    }
  }
  json resolved = merge_config(user);
  if (!path.empty()) {
    const auto base = path.parent_path();
    for (const char* key : {"images", "labels"}) {
      if (!user.contains("data") || !user["data"].contains(key)) continue;
      const std::filesystem::path p = resolved["data"][key].get<std::string>();
      if (p.is_relative()) resolved["data"][key] = (base / p).lexically_normal().string();
    }
  }
  if (seed_override) resolved["seed"] = *seed_override;
  if (resolved["seed"].get<std::int64_t>() < 0) throw CliError(kExitUsage, "seed must be >= 0");
  return resolved;
}

std::string config_digest(const json& resolved) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : resolved.dump()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t config_seed(const json& resolved) {
  return resolved["seed"].get<std::uint64_t>();
}

RunMode parse_mode(const std::string& name) {
  if (name == "two-phase") return RunMode::two_phase;
  if (name == "adam") return RunMode::adam_only;
  if (name == "cg") return RunMode::cg_only;
  throw CliError(kExitUsage, "train.mode must be two-phase, adam or cg");
}

Activation parse_activation(const std::string& name) {
  if (name == "tanh") return Activation::tanh;
  if (name == "relu") return Activation::relu;
  throw CliError(kExitUsage, "model.activation must be tanh or relu");
}

TwoPhaseConfig two_phase_config(const json& resolved) {
  const json& t = resolved["train"];
  const json& a = resolved["adam"];
  const json& l = resolved["line_search"];
  TwoPhaseConfig cfg;
  try {
    cfg.total_epochs = t["epochs"].get<std::size_t>();
    cfg.gnfact = t["gnfact"].get<double>();
    cfg.smoothing_window = t["smoothing_window"].get<std::size_t>();
    if (!t["max_adam_epochs"].is_null())
      cfg.max_adam_epochs = as_count(t["max_adam_epochs"], "train.max_adam_epochs");
    if (!t["cost_budget"].is_null()) cfg.cost_budget = t["cost_budget"].get<double>();
    const auto swap = t["swap_mode"].get<std::string>();
    if (swap != "detector" && swap != "fixed")
      throw CliError(kExitUsage, "train.swap_mode must be detector or fixed");
    cfg.swap_mode = swap == "fixed" ? SwapMode::fixed : SwapMode::detector;
    cfg.fixed_adam_fraction = t["fixed_adam_fraction"].get<double>();
    const auto update = t["cg_update"].get<std::string>();
    if (update != "pr+" && update != "fr")
      throw CliError(kExitUsage, "train.cg_update must be pr+ or fr");
    cfg.cg_update = update == "fr" ? CgUpdate::fletcher_reeves : CgUpdate::polak_ribiere_plus;

    cfg.adam.lr = a["lr"].get<double>();
    cfg.adam.beta1 = a["beta1"].get<double>();
    cfg.adam.beta2 = a["beta2"].get<double>();
    cfg.adam.eps = a["eps"].get<double>();
    cfg.adam.batch_size = a["batch_size"].get<std::size_t>();

    cfg.ls.initial_step = l["initial_step"].get<double>();
    cfg.ls.growth = l["growth"].get<double>();
    cfg.ls.tol = l["tol"].get<double>();
    cfg.ls.max_evals = l["max_evals"].get<std::size_t>();
    cfg.ls.reuse_step = l["reuse_step"].get<bool>();
    cfg.seed = config_seed(resolved);
    cfg.validate();
  } catch (const json::exception& e) {
    throw CliError(kExitUsage, std::string("config: ") + e.what());
  } catch (const ContractViolation& e) {
    throw CliError(kExitUsage, std::string("config: ") + e.what());
  }
  return cfg;
}

}  // namespace twophase::cli
