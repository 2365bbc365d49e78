#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <limits>
#include <string>

#include <CLI11.hpp>

#include "rhpdhg/bench.hpp"
#include "rhpdhg/errors.hpp"
#include "rhpdhg/mps.hpp"
#include "rhpdhg/report.hpp"
#include "rhpdhg/solver.hpp"

namespace {

constexpr int kExitOptimal = 0;
constexpr int kExitLimit = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitBreakdown = 70;

std::string self_exe_path() {
  char buf[4096];
  const ssize_t len = ::readlink("/proc/self/exe", buf, sizeof buf - 1);
  if (len <= 0) return {};
  buf[len] = '\0';
  return buf;
}

rhpdhg::SolverConfig load_base_config(const std::string& cli_config_path) {
  rhpdhg::SolverConfig cfg;
  std::string path = cli_config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("RHPDHG_CONFIG")) path = env;
  }
  if (!path.empty()) cfg = rhpdhg::SolverConfig::from_file(path);
  return cfg;
}

struct SolveArgs {
  std::string file;
  std::string config_path;
  std::string out_path;
  double eps = -1.0;
  bool high_accuracy = false;
  double time_limit = -1.0;
  long iter_limit = -1;
  bool no_scaling = false;
  double gamma = -1.0;
  bool vectors = false;
  int verbosity = 0;
};

int run_solve(const SolveArgs& args) {
  rhpdhg::SolverConfig cfg = load_base_config(args.config_path);
  if (args.high_accuracy) cfg.epsilon = 1e-8;
  if (args.eps > 0.0) cfg.epsilon = args.eps;
  if (args.time_limit >= 0.0) cfg.time_limit_seconds = args.time_limit;
  if (args.iter_limit >= 0) cfg.iteration_limit = args.iter_limit;
  if (args.no_scaling) cfg.scaling_enabled = false;
  if (args.gamma >= 0.0) cfg.reflection_gamma = args.gamma;
  cfg.verbosity = args.verbosity;
  cfg.validate();

  std::vector<std::string> warnings;
  const rhpdhg::LpProblem problem = rhpdhg::parse_mps_file(args.file, &warnings);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";

  const rhpdhg::SolutionReport report = rhpdhg::solve(problem, cfg);
  if (!args.out_path.empty()) {
    rhpdhg::write_solution_file(report, args.out_path, args.vectors);
  } else {
    rhpdhg::write_solution(report, std::cout, args.vectors);
  }
  std::cerr << "status " << rhpdhg::to_string(report.status) << ", objective "
            << report.objective << ", " << report.iterations << " iterations, "
            << report.restart_count << " restarts, " << report.wall_time_seconds << "s\n";
  return report.status == rhpdhg::SolveStatus::optimal ? kExitOptimal : kExitLimit;
}

struct BenchArgs {
  std::string dir;
  std::string config_path;
  std::string out_path;
  double eps = -1.0;
  bool high_accuracy = false;
  double small_limit = 3600.0;
  double large_limit = 18000.0;
  int workers = 1;
  bool no_scaling = false;
};

int run_bench(const BenchArgs& args) {
  rhpdhg::SolverConfig cfg = load_base_config(args.config_path);
  if (args.high_accuracy) cfg.epsilon = 1e-8;
  if (args.eps > 0.0) cfg.epsilon = args.eps;
  if (args.no_scaling) cfg.scaling_enabled = false;
  cfg.validate();

  rhpdhg::BenchmarkOptions opts;
  opts.small_limit_seconds = args.small_limit;
  opts.large_limit_seconds = args.large_limit;
  opts.workers = args.workers;
  opts.self_exe = self_exe_path();

  const rhpdhg::BenchmarkReport report = rhpdhg::run_benchmark(args.dir, cfg, opts, &std::cerr);
  rhpdhg::write_benchmark_table(report, std::cout);
  if (!args.out_path.empty()) rhpdhg::write_benchmark_json(report, cfg.epsilon, args.out_path);
  return kExitOptimal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"restarted reflected-Halpern PDHG linear programming solver"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one MPS instance");
  solve_cmd->add_option("file", solve_args.file, "MPS file (.mps or .mps.gz)")->required();
  solve_cmd->add_option("--eps", solve_args.eps, "relative KKT tolerance (default 1e-4)")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--high-accuracy", solve_args.high_accuracy, "preset eps = 1e-8");
  solve_cmd->add_option("--time-limit", solve_args.time_limit, "time limit in seconds");
  solve_cmd->add_option("--iter-limit", solve_args.iter_limit, "iteration limit");
  solve_cmd->add_flag("--no-scaling", solve_args.no_scaling, "disable diagonal preconditioning");
  solve_cmd->add_option("--gamma", solve_args.gamma, "reflection coefficient in [0, 1]");
  solve_cmd->add_option("--out", solve_args.out_path, "write the solution report here");
  solve_cmd->add_option("--config", solve_args.config_path,
                        "config file (or set RHPDHG_CONFIG)");
  solve_cmd->add_flag("--vectors", solve_args.vectors, "include full vectors in the report");
  solve_cmd->add_flag("-v,--verbose", solve_args.verbosity, "log solve progress");

  BenchArgs bench_args;
  CLI::App* bench_cmd = app.add_subcommand("bench", "run every instance in a directory");
  bench_cmd->add_option("dir", bench_args.dir, "directory of .mps/.mps.gz files")->required();
  bench_cmd->add_option("--eps", bench_args.eps, "relative KKT tolerance (default 1e-4)")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--high-accuracy", bench_args.high_accuracy, "preset eps = 1e-8");
  bench_cmd->add_option("--small-limit", bench_args.small_limit,
                        "time limit for small/medium instances (s)");
  bench_cmd->add_option("--large-limit", bench_args.large_limit,
                        "time limit for large instances (s)");
  bench_cmd->add_option("--workers", bench_args.workers, "parallel worker processes");
  bench_cmd->add_flag("--no-scaling", bench_args.no_scaling, "disable diagonal preconditioning");
  bench_cmd->add_option("--out", bench_args.out_path, "write the machine-readable JSON here");
  bench_cmd->add_option("--config", bench_args.config_path,
                        "config file (or set RHPDHG_CONFIG)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve_args);
    return run_bench(bench_args);
  } catch (const rhpdhg::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const rhpdhg::ParseError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const rhpdhg::InvalidProblemError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const rhpdhg::NumericalBreakdownError& e) {
    std::cerr << "numerical breakdown: " << e.what() << "\n";
    return kExitBreakdown;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBreakdown;
  }
}
