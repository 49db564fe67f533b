// Copyright 2026 The moasha authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: run experiments, sweep seeds/methods, recompute
// metrics against a pooled reference front, dump Pareto fronts, and generate
// tabular benchmark files. All outputs are files; exit code 0 on success,
// 1 on invalid input or runtime failure, 2 on bad command-line usage.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moasha/moasha.hpp"

namespace fs = std::filesystem;

namespace {

moasha::ExperimentConfig load_config(const std::string& path, const std::string& seed_override,
                                     const std::string& method_override,
                                     const std::string& clock_override) {
  auto cfg = moasha::parse_config_file(path);
  if (!seed_override.empty()) {
    cfg.seed = moasha::detail::parse_number<std::uint64_t>("seed", seed_override);
  }
  if (!method_override.empty()) cfg.method = moasha::parse_method(method_override);
  if (!clock_override.empty()) {
    if (clock_override == "simulated") cfg.clock = moasha::ClockKind::kSimulated;
    else if (clock_override == "wall") cfg.clock = moasha::ClockKind::kWall;
    else throw moasha::ConfigError("--clock expects simulated|wall");
  }
  moasha::validate_config(cfg);
  return cfg;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::string& seed_override, const std::string& method_override,
            const std::string& clock_override) {
  const auto cfg = load_config(config_path, seed_override, method_override, clock_override);
  const auto result = moasha::run_experiment(cfg);
  moasha::write_outputs(result, out_dir);
  std::cout << "method=" << moasha::method_name(cfg.method) << " seed=" << cfg.seed
            << " evaluations=" << result.records.size() << " failures=" << result.failures
            << " out=" << out_dir << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir, int seed_count,
              const std::vector<std::string>& methods, const std::string& clock_override) {
  auto base = load_config(config_path, "", "", clock_override);
  std::vector<moasha::MethodSpec> specs;
  if (methods.empty()) {
    for (const auto& entry : moasha::method_table()) {
      if (entry.spec.scheduler != moasha::SchedulerKind::kSyncHalving) {
        specs.push_back(entry.spec);
      }
    }
  } else {
    for (const auto& m : methods) specs.push_back(moasha::parse_method(m));
  }
  for (const auto& spec : specs) {
    for (int i = 0; i < seed_count; ++i) {
      auto cfg = base;
      cfg.method = spec;
      cfg.seed = base.seed + static_cast<std::uint64_t>(i);
      const auto result = moasha::run_experiment(cfg);
      const auto dir = fs::path(out_dir) /
                       (moasha::method_token(spec) + "_seed" + std::to_string(cfg.seed));
      moasha::write_outputs(result, dir.string());
      std::cout << "method=" << moasha::method_name(spec) << " seed=" << cfg.seed
                << " evaluations=" << result.records.size() << " out=" << dir.string() << "\n";
    }
  }
  return 0;
}

int cmd_metrics(const std::vector<std::string>& log_paths, const std::string& out_dir) {
  std::vector<std::vector<moasha::EvaluationRecord>> logs;
  logs.reserve(log_paths.size());
  for (const auto& path : log_paths) logs.push_back(moasha::load_log(path));
  const auto ref = moasha::build_reference(logs);
  fs::create_directories(out_dir);
  moasha::save_front_csv(ref.front, (fs::path(out_dir) / "reference_front.csv").string());
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const auto series = moasha::anytime_hypervolume(logs[i], ref);
    auto stem = fs::path(log_paths[i]).stem().string();
    // Disambiguate the common case of many <dir>/log.jsonl inputs.
    if (stem == "log") {
      const auto parent = fs::path(log_paths[i]).parent_path().filename().string();
      if (!parent.empty()) stem = parent;
    }
    moasha::save_metrics_csv(series,
                             (fs::path(out_dir) / (stem + "_metrics.csv")).string());
  }
  std::cout << "logs=" << logs.size() << " reference_hv=" << moasha::format_double(ref.front_hv)
            << " out=" << out_dir << "\n";
  return 0;
}

int cmd_front(const std::string& log_path, const std::string& out_file) {
  const auto records = moasha::load_log(log_path);
  const auto ref = moasha::build_reference({records});
  moasha::save_front_csv(ref.front, out_file);
  std::cout << "points=" << ref.front.points.size() << " out=" << out_file << "\n";
  return 0;
}

int cmd_bench_gen(std::size_t configs, std::size_t objectives, std::uint64_t seed, int max_budget,
                  const std::string& out_file) {
  const auto bench = moasha::generate_tabular(configs, seed, objectives, max_budget);
  moasha::save_tabular(bench, out_file);
  std::cout << "configs=" << configs << " objectives=" << objectives << " R=" << max_budget
            << " out=" << out_file << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-objective asynchronous successive halving"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", out_file, seed_override, method_override,
              clock_override, log_path;
  std::vector<std::string> methods, log_paths;
  int seed_count = 1;
  std::size_t gen_configs = 1000, gen_objectives = 2;
  std::uint64_t gen_seed = 0;
  int gen_max_budget = 81;

  auto* run = app.add_subcommand("run", "run one experiment from a config file");
  run->add_option("--config", config_path, "experiment config file")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", seed_override, "override the config seed");
  run->add_option("--method", method_override, "override the config method");
  run->add_option("--clock", clock_override, "override the clock (simulated|wall)");

  auto* sweep = app.add_subcommand("sweep", "repeat an experiment over seeds and methods");
  sweep->add_option("--config", config_path, "experiment config file")->required();
  sweep->add_option("--out", out_dir, "output directory");
  sweep->add_option("--seeds", seed_count, "number of consecutive seeds, starting at the config seed");
  sweep->add_option("--methods", methods, "comma-separated methods (default: RS + the five ASHA variants)")
      ->delimiter(',');
  sweep->add_option("--clock", clock_override, "override the clock (simulated|wall)");

  auto* metrics = app.add_subcommand("metrics",
                                     "recompute metric series for stored logs against their pooled reference front");
  metrics->add_option("logs", log_paths, "evaluation log files")->required();
  metrics->add_option("--out", out_dir, "output directory");

  auto* front = app.add_subcommand("front", "emit the final Pareto front of a log");
  front->add_option("--log", log_path, "evaluation log file")->required();
  front->add_option("--out", out_file, "output csv file")->required();

  auto* bench = app.add_subcommand("bench", "benchmark utilities");
  bench->require_subcommand(1);
  auto* gen = bench->add_subcommand("gen", "generate and store a tabular benchmark");
  gen->add_option("--configs", gen_configs, "number of configurations");
  gen->add_option("--objectives", gen_objectives, "number of objectives");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--max-budget", gen_max_budget, "maximum fidelity R");
  gen->add_option("--out", out_file, "output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    if (run->parsed()) {
      return cmd_run(config_path, out_dir, seed_override, method_override, clock_override);
    }
    if (sweep->parsed()) {
      return cmd_sweep(config_path, out_dir, seed_count, methods, clock_override);
    }
    if (metrics->parsed()) return cmd_metrics(log_paths, out_dir);
    if (front->parsed()) return cmd_front(log_path, out_file);
    if (bench->parsed()) {
      return cmd_bench_gen(gen_configs, gen_objectives, gen_seed, gen_max_budget, out_file);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
