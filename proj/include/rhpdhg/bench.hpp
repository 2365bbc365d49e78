#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rhpdhg/config.hpp"
#include "rhpdhg/termination.hpp"

namespace rhpdhg {

enum class SizeClass { small, medium, large };

const char* to_string(SizeClass c);
/// Nonzero-count buckets: <= 1M small (instances below 100K are classed
/// small too), 1M - 10M medium, > 10M large.
SizeClass classify_by_nnz(Index nnz);

struct BenchmarkRecord {
  std::string instance;
  std::string status;  // optimal / iteration_limit / time_limit / error
  double solve_seconds = 0.0;
  double scored_seconds = 0.0;  // time limit substituted when unsolved
  long iterations = 0;
  long restart_count = 0;
  KktResiduals residuals;
  Index nonzeros = 0;
  SizeClass size_class = SizeClass::small;
  std::string error;
};

struct BenchmarkSummaryRow {
  std::string group;
  long count = 0;
  long solved = 0;
  double sgm10 = 0.0;
};

struct BenchmarkReport {
  std::vector<BenchmarkRecord> records;
  std::vector<BenchmarkSummaryRow> summary;  // small, medium, large, total
};

struct BenchmarkOptions {
  double small_limit_seconds = 3600.0;  // small and medium classes
  double large_limit_seconds = 18000.0;
  int workers = 1;  // > 1 forks one solve per worker process
  std::string self_exe;  // path to the CLI binary, required when workers > 1
  double shift = 10.0;
};

/// Shifted geometric mean (prod (t_i + shift))^(1/n) - shift, computed in log
/// space. Empty input is a usage error.
double sgm10(std::span<const double> times, double shift = 10.0);

/// Solves every *.mps / *.mps.gz in `dir`. Per-instance failures are recorded,
/// never abort the run. Unsolved instances are scored at their time limit.
BenchmarkReport run_benchmark(const std::string& dir, const SolverConfig& cfg,
                              const BenchmarkOptions& opts,
                              std::ostream* log = nullptr);

void write_benchmark_table(const BenchmarkReport& report, std::ostream& out);
void write_benchmark_json(const BenchmarkReport& report, double epsilon, const std::string& path);

}  // namespace rhpdhg
