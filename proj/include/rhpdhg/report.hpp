#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rhpdhg/config.hpp"
#include "rhpdhg/termination.hpp"

namespace rhpdhg {

enum class SolveStatus { optimal, iteration_limit, time_limit };

const char* to_string(SolveStatus status);

/// Everything a solve run produces: the solution in original space and sense,
/// the six KKT scalars at it, counters, timings, and the effective config.
struct SolutionReport {
  SolveStatus status = SolveStatus::iteration_limit;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> reduced_costs;
  double objective = 0.0;  // offset-adjusted, original sense
  KktResiduals residuals;
  long iterations = 0;
  long restart_count = 0;
  double wall_time_seconds = 0.0;

  // diagnostics
  double final_fixed_point_residual = 0.0;
  double final_primal_weight = 1.0;
  double matrix_norm_estimate = 0.0;
  long power_iterations = 0;
  std::uint64_t spmv_loop = 0;
  std::uint64_t spmv_checks = 0;
  std::uint64_t spmv_setup = 0;
  long kkt_checks = 0;
  std::optional<KktResiduals> inner_residuals;  // last inner PDHG iterate, when one exists
  std::vector<double> fixed_point_residual_history;  // filled when requested
  SolverConfig config;
};

/// Writes the machine-parseable key-value document (schema in the README).
/// Vectors are included on request.
void write_solution(const SolutionReport& report, std::ostream& out,
                    bool include_vectors = false);
void write_solution_file(const SolutionReport& report, const std::string& path,
                         bool include_vectors = false);

/// Minimal reader for the fields the benchmark harness aggregates.
struct SolutionSummary {
  std::string status;
  double objective = 0.0;
  long iterations = 0;
  long restart_count = 0;
  double wall_time_seconds = 0.0;
  KktResiduals residuals;
};
SolutionSummary read_solution_summary(std::istream& in);

}  // namespace rhpdhg
