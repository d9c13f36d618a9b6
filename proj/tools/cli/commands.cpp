#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>

#include <CLI11.hpp>

#include "cli/csv.hpp"
#include "twophase/dataset.hpp"
#include "twophase/diagnostics.hpp"
#include "twophase/gradcheck.hpp"
#include "twophase/idx.hpp"
#include "twophase/mlp.hpp"
#include "twophase/objectives.hpp"
#include "twophase/toy_models.hpp"
#include "twophase/twophase.hpp"

namespace twophase::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kDataSeedMix = 0x5851F42D4C957F2Dull;

double get_double(const json& j, const char* key) {
  if (!j.at(key).is_number()) throw CliError(kExitUsage, std::string(key) + " must be a number");
  return j.at(key).get<double>();
}

std::size_t get_count(const json& j, const char* key) {
  if (!j.at(key).is_number_unsigned())
    throw CliError(kExitUsage, std::string(key) + " must be a nonnegative integer");
  return j.at(key).get<std::size_t>();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError(kExitUsage, "cannot write " + path.string());
  out << text;
}

void write_provenance(const json& cfg, const fs::path& out_dir, const std::string& command,
                      int status, const std::vector<std::string>& outputs) {
  write_text(out_dir / "config.resolved.json", cfg.dump(2) + "\n");
  json run = {{"command", command},
              {"config_digest", config_digest(cfg)},
              {"seed", cfg["seed"]},
              {"status", status},
              {"outputs", outputs}};
  write_text(out_dir / "run.json", run.dump(2) + "\n");
}

// ---------------------------------------------------------------- problems

struct Problem {
  std::string source;
  DataSplit split;
  std::vector<std::size_t> dims;
  Activation act = Activation::tanh;
  std::optional<QuadraticObjective> quadratic;
  std::optional<ScalarObjective> scalar;
  Vector start;

  [[nodiscard]] bool is_mlp() const { return !quadratic && !scalar; }
};

std::vector<std::size_t> model_dims(const json& cfg) {
  const json& d = cfg["model"]["dims"];
  if (!d.is_array() || d.empty()) throw CliError(kExitUsage, "model.dims must be a nonempty list");
  std::vector<std::size_t> dims;
  for (const auto& v : d) {
    if (!v.is_number_unsigned() || v.get<std::size_t>() == 0)
      throw CliError(kExitUsage, "model.dims entries must be positive integers");
    dims.push_back(v.get<std::size_t>());
  }
  return dims;
}

Matrix random_spd(Rng& rng, std::size_t n) {
  Matrix b(n, n), a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = rng.normal();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += b(i, k) * b(j, k);
      a(i, j) = s / static_cast<double>(n) + (i == j ? 1.0 : 0.0);
    }
  return a;
}

Problem load_problem(const json& cfg) {
  const json& data = cfg["data"];
  const std::uint64_t seed = config_seed(cfg);
  Problem pr;
  pr.source = data["source"].get<std::string>();

  if (pr.source == "toy") {
    const ToyTanhTask task{get_double(data, "toy_x"), get_double(data, "toy_r"), 100};
    if (task.x == 0.0) throw CliError(kExitUsage, "data.toy_x must be nonzero");
    pr.scalar = ScalarObjective::toy(task);
    const double p0 =
        data["toy_start"].is_null() ? 3.0 / std::abs(task.x) : get_double(data, "toy_start");
    pr.start = Vector{p0};
    return pr;
  }
  if (pr.source == "quadratic") {
    const std::size_t n = get_count(data, "quadratic_dimension");
    if (n == 0) throw CliError(kExitUsage, "data.quadratic_dimension must be positive");
    Rng rng(seed ^ kDataSeedMix);
    Matrix a = random_spd(rng, n);
    Vector center(n);
    for (double& v : center) v = rng.normal();
    pr.quadratic.emplace(std::move(a), std::move(center));
    pr.start = Vector(n);
    return pr;
  }

  pr.dims = model_dims(cfg);
  pr.act = parse_activation(cfg["model"]["activation"].get<std::string>());
  const std::size_t train = get_count(data, "train_size");
  const std::size_t val = get_count(data, "validation_size");
  if (train == 0) throw CliError(kExitUsage, "data.train_size must be positive");

  Dataset all;
  if (pr.source == "mnist") {
    try {
      all = load_idx(data["images"].get<std::string>(), data["labels"].get<std::string>());
    } catch (const IdxError& e) {
      throw CliError(kExitIngestion, std::string("ingestion error: ") + e.what());
    }
  } else if (pr.source == "synthetic") {
    all = synthetic_classification(train + val, pr.dims.front(), pr.dims.back(),
                                   seed ^ kDataSeedMix);
  } else {
    throw CliError(kExitUsage, "data.source must be mnist, synthetic, toy or quadratic");
  }
  if (all.input_width() != pr.dims.front() || all.output_width() != pr.dims.back())
    throw CliError(kExitUsage, "model.dims do not match the data shape");
  if (train + val > all.size())
    throw CliError(kExitUsage, "train_size + validation_size exceeds the available examples");
  pr.split = seeded_split(all, train, val, seed ^ kDataSeedMix);
  pr.start = init_mlp_weights(pr.dims, seed);
  return pr;
}

template <typename Fn>
auto with_objective(const Problem& pr, Fn&& fn) {
  if (pr.quadratic) return fn(*pr.quadratic);
  if (pr.scalar) return fn(*pr.scalar);
  const MlpObjective obj(pr.dims, pr.act, pr.split.train);
  return fn(obj);
}

struct RunResult {
  TrainingTrace trace;
  Vector params;
};

RunResult run_mode(const Problem& pr, RunMode mode, const TwoPhaseConfig& tp,
                   const std::string& digest) {
  return with_objective(pr, [&](const auto& obj) {
    RunResult r{{}, pr.start};
    CostMeter meter(examples_of(obj));
    r.trace = run_training(mode, obj, r.params, tp, meter);
    r.trace.config_digest = digest;
    return r;
  });
}

void write_trace(const fs::path& path, const TrainingTrace& trace) {
  CsvWriter csv(path, {"epoch", "phase", "loss", "grad_norm", "gnmax", "cost_units"});
  for (const auto& r : trace.rows)
    csv.row({static_cast<std::int64_t>(r.epoch), std::string(phase_name(r.phase)), r.loss,
             r.grad_norm, r.gnmax, r.cost_units});
}

std::string describe_flags(const TrainingTrace& trace) {
  std::string s;
  const std::pair<std::uint32_t, const char*> names[] = {
      {TraceFlag::forced_swap, "forced_swap"}, {TraceFlag::no_bracket, "no_bracket"},
      {TraceFlag::stalled, "stalled"},         {TraceFlag::stall_run, "stall_run"},
      {TraceFlag::converged, "converged"},     {TraceFlag::non_finite, "non_finite"}};
  for (const auto& [flag, name] : names) {
    std::size_t n = 0;
    for (const auto& r : trace.rows) n += r.has(flag);
    if (n > 0) s += std::string(s.empty() ? "" : " ") + name + "=" + std::to_string(n);
  }
  return s.empty() ? "none" : s;
}

// --------------------------------------------------------------- landscape

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  std::vector<double> p(points);
  for (std::size_t i = 0; i < points; ++i)
    p[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return p;
}

struct LandscapeColumns {
  std::vector<double> loss, dloss, curvature;
};

LandscapeColumns scan(const ScalarObjective& f, const std::vector<double>& grid) {
  LandscapeColumns c;
  const ConvexityProbe probe;
  for (double p : grid) {
    const Evaluation e = f.evaluate(Vector{p});
    c.loss.push_back(e.loss);
    c.dloss.push_back(e.gradient[0]);
    c.curvature.push_back(directional_curvature(f, Vector{p}, Vector{1.0}, probe));
  }
  return c;
}

void append_rows(CsvWriter& csv, std::int64_t task_id, const std::vector<double>& grid,
                 const LandscapeColumns& c) {
  for (std::size_t i = 0; i < grid.size(); ++i)
    csv.row({task_id, grid[i], c.loss[i], c.dloss[i], c.curvature[i]});
}

std::size_t convex_regions(const std::vector<double>& curvature) {
  std::size_t regions = 0;
  bool inside = false;
  for (double v : curvature) {
    if (v > 0.0 && !inside) ++regions;
    inside = v > 0.0;
  }
  return regions;
}

const std::vector<std::string> kLandscapeHeader = {"task_id", "p", "loss", "dloss_dp",
                                                   "curvature"};

// ---------------------------------------------------------------- gradcheck

const std::vector<std::string> kGradcheckFamilies = {"toy-tanh", "two-layer", "mlp", "mlp-zero"};

Dataset random_dataset(Rng& rng, std::size_t k, std::size_t d, std::size_t m) {
  Dataset data{Matrix(k, d), Matrix(k, m)};
  for (std::size_t r = 0; r < k; ++r) {
    for (double& v : data.inputs.row(r)) v = rng.uniform(-1.0, 1.0);
    for (double& v : data.targets.row(r)) v = rng.uniform(-1.0, 1.0);
  }
  return data;
}

}  // namespace

std::size_t grid_minima(const std::vector<double>& dloss) {
  std::size_t minima = 0;
  for (std::size_t i = 1; i < dloss.size(); ++i)
    if (dloss[i - 1] < 0.0 && dloss[i] >= 0.0) ++minima;
  return minima;
}

int cmd_landscape(const json& cfg, const fs::path& out_dir, std::ostream& out) {
  const json& l = cfg["landscape"];
  const std::string family = l["family"].get<std::string>();
  const double lo = get_double(l, "p_min"), hi = get_double(l, "p_max");
  const std::size_t points = get_count(l, "points");
  if (!(lo < hi)) throw CliError(kExitUsage, "landscape: p_min must be below p_max");
  if (points < 2) throw CliError(kExitUsage, "landscape: points must be at least 2");
  const auto grid = uniform_grid(lo, hi, points);
  std::vector<std::string> outputs;

  try {
    if (family == "toy-tanh") {
      const std::size_t n = get_count(l, "tasks");
      if (n == 0) throw CliError(kExitUsage, "landscape.tasks must be positive");
      const auto tasks = gen_toy_tasks(config_seed(cfg), n);
      CsvWriter csv(out_dir / "landscape.csv", kLandscapeHeader);
      outputs.push_back("landscape.csv");
      for (std::size_t t = 0; t < tasks.size(); ++t) {
        const auto c = scan(ScalarObjective::toy(tasks[t]), grid);
        append_rows(csv, static_cast<std::int64_t>(t), grid, c);
        out << "task " << t << " x=" << format_double(tasks[t].x)
            << " r=" << format_double(tasks[t].r) << " minima=" << grid_minima(c.dloss)
            << " min_loss=" << format_double(*std::min_element(c.loss.begin(), c.loss.end()))
            << "\n";
      }
    } else if (family == "two-layer") {
      const double x = get_double(l, "x"), r = get_double(l, "r");
      const json& weights = l["weights"];
      if (!weights.is_array() || weights.empty())
        throw CliError(kExitUsage, "landscape.weights must be a nonempty list");
      for (std::size_t j = 0; j < weights.size(); ++j) {
        if (!weights[j].is_number()) throw CliError(kExitUsage, "landscape.weights: not a number");
        const double c_weight = weights[j].get<double>();
        char name[64];
        std::snprintf(name, sizeof name, "landscape_c%.2f.csv", c_weight);
        CsvWriter csv(out_dir / name, kLandscapeHeader);
        outputs.emplace_back(name);
        const auto c = scan(ScalarObjective::two_layer({x, r, c_weight}), grid);
        append_rows(csv, static_cast<std::int64_t>(j), grid, c);
        out << "C=" << format_double(c_weight) << " minima=" << grid_minima(c.dloss)
            << " convex_regions=" << convex_regions(c.curvature) << "\n";
      }
    } else {
      throw CliError(kExitUsage, "landscape.family must be toy-tanh or two-layer");
    }
  } catch (const ProbeError& e) {
    write_provenance(cfg, out_dir, "landscape", kExitNumerical, outputs);
    throw CliError(kExitNumerical, e.what());
  }
  write_provenance(cfg, out_dir, "landscape", kExitOk, outputs);
  return kExitOk;
}

int cmd_train(const json& cfg, const fs::path& out_dir, std::ostream& out) {
  const TwoPhaseConfig tp = two_phase_config(cfg);
  const RunMode mode = parse_mode(cfg["train"]["mode"].get<std::string>());
  const Problem pr = load_problem(cfg);
  const std::string digest = config_digest(cfg);
  const RunResult r = run_mode(pr, mode, tp, digest);

  write_trace(out_dir / "trace.csv", r.trace);
  std::vector<std::string> outputs = {"trace.csv"};
  out << "mode " << run_mode_name(mode) << " epochs " << r.trace.rows.size() << " flags "
      << describe_flags(r.trace) << "\n";
  if (r.trace.empty() || r.trace.has_flag(TraceFlag::non_finite)) {
    write_provenance(cfg, out_dir, "train", kExitNumerical, outputs);
    throw CliError(kExitNumerical, "non-finite loss during training; partial trace written");
  }

  std::vector<CsvCell> row(6);
  if (pr.is_mlp()) {
    const MlpModel model{pr.dims, r.params, pr.act};
    const Dataset& train = pr.split.train;
    const Dataset& val = pr.split.validation;
    row[0] = mlp_loss(model, train);
    row[1] = argmax_accuracy(mlp_forward(model, train.inputs), train.targets);
    if (val.size() > 0) {
      row[2] = mlp_loss(model, val);
      row[3] = argmax_accuracy(mlp_forward(model, val.inputs), val.targets);
    }
    const std::size_t p = parameter_count(pr.dims);
    if (p > 0) row[4] = overdetermination_q(train.size(), train.output_width(), p);
  } else {
    row[0] = r.trace.back().loss;
  }
  row[5] = optional_cell(r.trace.swap_epoch);
  {
    CsvWriter csv(out_dir / "summary.csv", {"final_train_mse", "final_train_acc", "final_val_mse",
                                            "final_val_acc", "Q", "swap_epoch"});
    csv.row(row);
  }
  outputs.push_back("summary.csv");
  out << "final_train_mse " << format_cell(row[0]) << " swap_epoch " << format_cell(row[5])
      << " config_digest " << digest << "\n";
  write_provenance(cfg, out_dir, "train", kExitOk, outputs);
  return kExitOk;
}

CompareResult compare_modes(const json& cfg) {
  TwoPhaseConfig tp = two_phase_config(cfg);
  if (!tp.cost_budget) tp.cost_budget = 4.0 * static_cast<double>(tp.total_epochs);
  const Problem pr = load_problem(cfg);
  const std::string digest = config_digest(cfg);
  CompareResult res;
  res.budget = *tp.cost_budget;
  res.two_phase = run_mode(pr, RunMode::two_phase, tp, digest).trace;
  res.adam = run_mode(pr, RunMode::adam_only, tp, digest).trace;
  res.cg = run_mode(pr, RunMode::cg_only, tp, digest).trace;
  res.final_two_phase = loss_at_budget(res.two_phase, res.budget);
  res.final_adam = loss_at_budget(res.adam, res.budget);
  res.final_cg = loss_at_budget(res.cg, res.budget);
  return res;
}

int cmd_compare(const json& cfg, const fs::path& out_dir, std::ostream& out) {
  const CompareResult res = compare_modes(cfg);
  const std::pair<const char*, const TrainingTrace*> arms[] = {
      {"two_phase", &res.two_phase}, {"adam", &res.adam}, {"cg", &res.cg}};

  std::vector<std::string> outputs;
  for (const auto& [name, trace] : arms) {
    const std::string file = std::string("trace_") + name + ".csv";
    write_trace(out_dir / file, *trace);
    outputs.push_back(file);
  }

  std::set<double> costs;
  for (const auto& [name, trace] : arms)
    for (const auto& r : trace->rows) costs.insert(r.cost_units);
  {
    CsvWriter csv(out_dir / "compare.csv", {"cost_units", "two_phase", "adam", "cg"});
    std::size_t at[3] = {0, 0, 0};
    for (double c : costs) {
      std::vector<CsvCell> row{c};
      for (std::size_t k = 0; k < 3; ++k) {
        const auto& rows = arms[k].second->rows;
        while (at[k] + 1 < rows.size() && rows[at[k] + 1].cost_units <= c) ++at[k];
        const bool started = !rows.empty() && rows[0].cost_units <= c;
        const bool ended = rows.empty() || c > rows.back().cost_units;
        if (started && !ended) {
          row.emplace_back(rows[at[k]].loss);
        } else {
          row.emplace_back(std::monostate{});
        }
      }
      csv.row(row);
    }
  }
  outputs.push_back("compare.csv");

  {
    CsvWriter csv(out_dir / "verdict.csv", {"check", "result", "two_phase", "adam", "cg"});
    csv.row({std::string("two_phase_le_adam"), std::string(res.two_phase_le_adam() ? "PASS" : "FAIL"),
             res.final_two_phase, res.final_adam, res.final_cg});
    csv.row({std::string("cg_only_worst"), std::string(res.cg_worst() ? "PASS" : "FAIL"),
             res.final_two_phase, res.final_adam, res.final_cg});
  }
  outputs.push_back("verdict.csv");

  out << "budget " << format_double(res.budget) << " cost units\n";
  for (const auto& [name, trace] : arms)
    out << name << " final_loss " << format_double(loss_at_budget(*trace, res.budget))
        << " epochs " << trace->rows.size() << " flags " << describe_flags(*trace) << "\n";
  out << "verdict two_phase_le_adam " << (res.two_phase_le_adam() ? "PASS" : "FAIL") << "\n";
  out << "verdict cg_only_worst " << (res.cg_worst() ? "PASS" : "FAIL") << "\n";

  for (const auto& [name, trace] : arms)
    if (trace->empty() || trace->has_flag(TraceFlag::non_finite)) {
      write_provenance(cfg, out_dir, "compare", kExitNumerical, outputs);
      throw CliError(kExitNumerical, std::string("non-finite loss in the ") + name + " run");
    }
  write_provenance(cfg, out_dir, "compare", kExitOk, outputs);
  return kExitOk;
}

std::vector<GradcheckReport> run_gradcheck(const json& cfg) {
  const json& g = cfg["gradcheck"];
  const std::size_t n = get_count(g, "configs");
  const double h = get_double(g, "step");
  if (!(h > 0.0)) throw CliError(kExitUsage, "gradcheck.step must be positive");
  std::string corrupt;
  if (!g["corrupt"].is_null()) {
    if (!g["corrupt"].is_string()) throw CliError(kExitUsage, "gradcheck.corrupt must be a family");
    corrupt = g["corrupt"].get<std::string>();
    if (std::find(kGradcheckFamilies.begin(), kGradcheckFamilies.end(), corrupt) ==
        kGradcheckFamilies.end())
      throw CliError(kExitUsage, "gradcheck.corrupt names an unknown family");
  }
  const double tolerance = get_double(g, "tolerance");

  Rng rng(config_seed(cfg));
  std::vector<GradcheckReport> reports;
  for (const auto& family : kGradcheckFamilies) {
    GradcheckReport rep;
    rep.family = family;
    rep.configs = n;
    for (std::size_t i = 0; i < n; ++i) {
      double loss = 0.0;
      Vector analytic, numeric;
      if (family == "toy-tanh" || family == "two-layer") {
        std::function<LossGrad(double)> fn;
        if (family == "toy-tanh") {
          const ToyTanhTask task{rng.uniform_open(-0.5, 0.5), rng.uniform_open(0.0, 1.0), 100};
          fn = [task](double p) { return toy_loss_grad(p, task); };
        } else {
          const TwoLayerTask task{rng.uniform_open(-1.0, 1.0), rng.uniform_open(0.0, 1.0),
                                  rng.uniform(0.3, 0.7)};
          fn = [task](double p) { return twolayer_loss_grad(p, task); };
        }
        const double p = rng.uniform(-6.0, 6.0);
        const LossGrad lg = fn(p);
        loss = lg.loss;
        analytic = Vector{lg.grad};
        numeric = central_difference([&](const Vector& v) { return fn(v[0]).loss; }, Vector{p}, h);
      } else {
        std::vector<std::size_t> dims;
        if (family == "mlp") {
          dims.push_back(1 + rng.below(4));
          const std::size_t hidden_layers = 1 + rng.below(2);
          for (std::size_t k = 0; k < hidden_layers; ++k) dims.push_back(1 + rng.below(5));
          dims.push_back(1 + rng.below(3));
        } else {
          dims.push_back(1 + rng.below(4));
        }
        const Dataset data = random_dataset(rng, 1 + rng.below(6), dims.front(), dims.back());
        const Vector w = init_mlp_weights(dims, rng.below(1u << 30));
        const MseGrad r = mlp_loss_grad(dims, Activation::tanh, w.span(), data);
        loss = r.mse;
        analytic = r.grad;
        numeric = central_difference(
            [&](const Vector& v) { return mlp_loss(dims, Activation::tanh, v.span(), data); }, w,
            h);
      }
      if (family == corrupt && !analytic.empty()) analytic[0] += 1e-3 * (1.0 + std::abs(analytic[0]));
      for (std::size_t j = 0; j < analytic.size(); ++j) {
        const double e = relative_error(analytic[j], numeric[j], difference_floor(loss));
        rep.max_rel_error = std::max(rep.max_rel_error, e);
        if (!(e < tolerance))
          rep.offending.push_back("config=" + std::to_string(i) + " param=" + std::to_string(j) +
                                  " rel_error=" + format_double(e));
      }
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

int cmd_gradcheck(const json& cfg, const fs::path& out_dir, std::ostream& out) {
  const double tolerance = get_double(cfg["gradcheck"], "tolerance");
  const auto reports = run_gradcheck(cfg);
  bool ok = true;
  {
    CsvWriter csv(out_dir / "gradcheck.csv", {"family", "configs", "max_rel_error", "status"});
    for (const auto& r : reports) {
      const bool pass = r.passed(tolerance);
      ok = ok && pass;
      csv.row({r.family, static_cast<std::int64_t>(r.configs), r.max_rel_error,
               std::string(pass ? "PASS" : "FAIL")});
      out << r.family << " configs=" << r.configs << " max_rel_error="
          << format_double(r.max_rel_error) << " " << (pass ? "PASS" : "FAIL") << "\n";
      for (const auto& o : r.offending) out << "  " << r.family << " " << o << "\n";
    }
  }
  write_provenance(cfg, out_dir, "gradcheck", ok ? kExitOk : kExitGradcheck, {"gradcheck.csv"});
  return ok ? kExitOk : kExitGradcheck;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-phase Adam/CG training experiments"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::int64_t> seed;
  const std::pair<const char*, const char*> commands[] = {
      {"landscape", "Sample 1-D toy loss landscapes"},
      {"train", "Train with two-phase or a single optimizer"},
      {"compare", "Compare Adam, CG and two-phase at equal cost"},
      {"gradcheck", "Check analytic gradients against finite differences"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--seed", seed, "Seed (overrides the config)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    const json cfg = load_config(config_path, seed);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw CliError(kExitUsage, "cannot create " + out_dir + ": " + ec.message());
    if (command == "landscape") return cmd_landscape(cfg, out_dir, out);
    if (command == "train") return cmd_train(cfg, out_dir, out);
    if (command == "compare") return cmd_compare(cfg, out_dir, out);
    return cmd_gradcheck(cfg, out_dir, out);
  } catch (const CliError& e) {
    err << "error: " << e.what() << "\n";
    return e.code();
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace twophase::cli
