// Copyright 2026 The moasha authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the command-line surface: spawns the real binary and
// inspects exit codes and produced files.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args, const fs::path& dir) {
  const auto out_path = dir / "stdout.txt";
  const auto err_path = dir / "stderr.txt";
  const std::string cmd = std::string(MOASHA_CLI_PATH) + " " + args + " > " + out_path.string() +
                          " 2> " + err_path.string();
  const int raw = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("moasha_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_config(const fs::path& path) {
  std::ofstream out(path);
  out << "benchmark = concave\n"
      << "bench_dim = 4\n"
      << "bench_sigma = 0.1\n"
      << "bench_seed = 2\n"
      << "method = ASHA+EpsNet\n"
      << "workers = 4\n"
      << "time_budget = 40\n"
      << "seed = 1\n"
      << "eta = 3\n"
      << "r0 = 1\n"
      << "R = 27\n";
}

std::string file_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("bad usage exits with code 2") {
  const auto dir = fresh_dir("usage");
  REQUIRE(run_cli("", dir).exit_code == 2);
  REQUIRE(run_cli("frobnicate", dir).exit_code == 2);
  REQUIRE(run_cli("run --no-such-flag", dir).exit_code == 2);
  fs::remove_all(dir);
}

TEST_CASE("help exits cleanly") {
  const auto dir = fresh_dir("help");
  const auto result = run_cli("--help", dir);
  REQUIRE(result.exit_code == 0);
  REQUIRE(result.out.find("run") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("missing config files exit with code 1 and name the path") {
  const auto dir = fresh_dir("missing");
  const auto result = run_cli("run --config /no/such/config.ini --out " + dir.string(), dir);
  REQUIRE(result.exit_code == 1);
  REQUIRE(result.err.find("/no/such/config.ini") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("run produces the experiment artifacts deterministically") {
  const auto dir = fresh_dir("run");
  write_config(dir / "exp.ini");
  const auto out_a = dir / "a";
  const auto out_b = dir / "b";
  REQUIRE(run_cli("run --config " + (dir / "exp.ini").string() + " --out " + out_a.string(), dir)
              .exit_code == 0);
  REQUIRE(run_cli("run --config " + (dir / "exp.ini").string() + " --out " + out_b.string(), dir)
              .exit_code == 0);
  for (const char* name : {"log.jsonl", "metrics.csv", "front.csv"}) {
    REQUIRE(fs::exists(out_a / name));
    REQUIRE(file_bytes(out_a / name) == file_bytes(out_b / name));
  }
  REQUIRE(fs::file_size(out_a / "log.jsonl") > 0);
  fs::remove_all(dir);
}

TEST_CASE("seed and method overrides change the run") {
  const auto dir = fresh_dir("override");
  write_config(dir / "exp.ini");
  const auto base = dir / "base";
  const auto seeded = dir / "seeded";
  const auto rs = dir / "rs";
  REQUIRE(run_cli("run --config " + (dir / "exp.ini").string() + " --out " + base.string(), dir)
              .exit_code == 0);
  REQUIRE(run_cli("run --config " + (dir / "exp.ini").string() + " --seed 9 --out " +
                      seeded.string(),
                  dir)
              .exit_code == 0);
  REQUIRE(file_bytes(base / "log.jsonl") != file_bytes(seeded / "log.jsonl"));

  const auto method_run = run_cli(
      "run --config " + (dir / "exp.ini").string() + " --method RS --out " + rs.string(), dir);
  REQUIRE(method_run.exit_code == 0);
  REQUIRE(method_run.out.find("method=RS") != std::string::npos);
  REQUIRE(file_bytes(base / "log.jsonl") != file_bytes(rs / "log.jsonl"));
  fs::remove_all(dir);
}

TEST_CASE("metrics emits one series per log plus the reference front") {
  const auto dir = fresh_dir("metrics");
  write_config(dir / "exp.ini");
  const auto a = dir / "run_a";
  const auto b = dir / "run_b";
  REQUIRE(run_cli("run --config " + (dir / "exp.ini").string() + " --out " + a.string(), dir)
              .exit_code == 0);
  REQUIRE(run_cli("run --config " + (dir / "exp.ini").string() + " --seed 2 --out " + b.string(),
                  dir)
              .exit_code == 0);
  const auto out = dir / "metrics_out";
  REQUIRE(run_cli("metrics " + (a / "log.jsonl").string() + " " + (b / "log.jsonl").string() +
                      " --out " + out.string(),
                  dir)
              .exit_code == 0);
  REQUIRE(fs::exists(out / "reference_front.csv"));
  REQUIRE(fs::exists(out / "run_a_metrics.csv"));
  REQUIRE(fs::exists(out / "run_b_metrics.csv"));
  fs::remove_all(dir);
}

TEST_CASE("front dumps the final pareto front of a log") {
  const auto dir = fresh_dir("front");
  write_config(dir / "exp.ini");
  const auto out = dir / "run";
  REQUIRE(run_cli("run --config " + (dir / "exp.ini").string() + " --out " + out.string(), dir)
              .exit_code == 0);
  const auto front_file = dir / "pareto.csv";
  REQUIRE(run_cli("front --log " + (out / "log.jsonl").string() + " --out " +
                      front_file.string(),
                  dir)
              .exit_code == 0);
  REQUIRE(fs::exists(front_file));
  REQUIRE(fs::file_size(front_file) > 0);
  fs::remove_all(dir);
}

TEST_CASE("sweep lays out deterministic per-run directories") {
  const auto dir = fresh_dir("sweep");
  write_config(dir / "exp.ini");
  const auto out = dir / "sweep_out";
  const auto result = run_cli("sweep --config " + (dir / "exp.ini").string() +
                                  " --seeds 2 --methods RS,ASHA+EpsNet --out " + out.string(),
                              dir);
  REQUIRE(result.exit_code == 0);
  for (const char* run : {"rs_seed1", "rs_seed2", "asha-eps-net_seed1", "asha-eps-net_seed2"}) {
    REQUIRE(fs::exists(out / run / "log.jsonl"));
    REQUIRE(fs::exists(out / run / "metrics.csv"));
    REQUIRE(fs::exists(out / run / "front.csv"));
  }
  fs::remove_all(dir);
}

TEST_CASE("bench gen writes a loadable tabular file") {
  const auto dir = fresh_dir("benchgen");
  const auto file = dir / "table.jsonl";
  REQUIRE(run_cli("bench gen --configs 20 --objectives 2 --seed 4 --max-budget 9 --out " +
                      file.string(),
                  dir)
              .exit_code == 0);
  REQUIRE(fs::exists(file));

  // A file-backed experiment consumes the generated table.
  std::ofstream cfg(dir / "exp.ini");
  cfg << "benchmark = file\n"
      << "bench_path = " << file.string() << "\n"
      << "method = RS\n"
      << "workers = 2\n"
      << "time_budget = 50\n"
      << "R = 9\n";
  cfg.close();
  const auto out = dir / "run";
  REQUIRE(run_cli("run --config " + (dir / "exp.ini").string() + " --out " + out.string(), dir)
              .exit_code == 0);
  REQUIRE(fs::exists(out / "log.jsonl"));
  fs::remove_all(dir);
}
