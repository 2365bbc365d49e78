#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace rhpdhg {

/// All solver knobs. File/CLI keys are the dotted names in the comments;
/// unknown keys are rejected. Defaults are the shipped configuration.
struct SolverConfig {
  // scaling
  bool scaling_enabled = true;   // scaling.enabled
  int ruiz_iterations = 10;      // scaling.ruiz_iters
  bool pock_chambolle = true;    // scaling.pock_chambolle
  // stepsize & matrix norm estimation
  double stepsize_multiplier = 0.99;  // stepsize.multiplier, in (0, 0.99]
  double power_tol = 1e-4;            // power.tol
  long power_max_iters = 5000;        // power.max_iters
  std::uint64_t power_seed = 0;       // power.seed
  // restarts
  bool restarts_enabled = true;    // restart.enabled
  double beta_sufficient = 0.2;    // restart.beta_sufficient
  double beta_necessary = 0.8;     // restart.beta_necessary
  double beta_artificial = 0.36;   // restart.beta_artificial
  double reflection_gamma = 1.0;   // reflection.gamma
  // primal weight
  double pid_kp = 0.5;           // pid.kp
  double pid_ki = 0.0;           // pid.ki
  double pid_kd = 0.0;           // pid.kd
  double initial_weight = 1.0;   // weight.initial
  // termination
  double epsilon = 1e-4;   // tol.epsilon
  long check_interval = 64;  // tol.check_interval
  double time_limit_seconds = std::numeric_limits<double>::infinity();  // limits.time_seconds
  long iteration_limit = std::numeric_limits<long>::max();              // limits.iterations
  // diagnostics
  int verbosity = 0;
  bool record_residual_history = false;  // not a file key; test/bench instrumentation

  /// Throws UsageError on out-of-range values.
  void validate() const;

  /// Applies one `key value` pair; throws UsageError on unknown keys or
  /// unparseable values.
  void set(const std::string& key, const std::string& value);

  /// Effective configuration as (key, value) pairs, echoed into run reports.
  std::vector<std::pair<std::string, std::string>> key_values() const;

  /// Parses a key-value config file (one `key value` or `key = value` pair
  /// per line, '#' comments) on top of the base values.
  static SolverConfig from_file(const std::string& path);
  static SolverConfig from_file(const std::string& path, SolverConfig base);
};

}  // namespace rhpdhg
