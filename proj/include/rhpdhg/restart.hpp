#pragma once

#include <limits>
#include <utility>

#include "rhpdhg/pdhg.hpp"

namespace rhpdhg {

enum class RestartCondition { none, sufficient, necessary_no_progress, artificial };

/// Per-epoch bookkeeping for the adaptive restart scheme. `anchor` is both the
/// Halpern anchor and the epoch-start point; `k` counts inner iterations since
/// the last restart and `total` counts all iterations since solve start.
struct RestartState {
  Iterate anchor;
  long k = 0;
  long n = 0;
  long total = 0;
  double r_anchor = std::numeric_limits<double>::infinity();
  double r_prev = std::numeric_limits<double>::infinity();
  double beta_sufficient = 0.2;
  double beta_necessary = 0.8;
  double beta_artificial = 0.36;
  long restart_count = 0;
};

/// PID controller state driving the log primal weight toward balanced
/// primal/dual movement over each epoch.
struct PidState {
  double kp = 0.5;
  double ki = 0.0;
  double kd = 0.0;
  double integral = 0.0;
  double prev_error = 0.0;
  double omega = 1.0;
  std::vector<double> snapshot_x;  // epoch-start iterate
  std::vector<double> snapshot_y;
};

double initial_weight();

/// One reflected Halpern step
///   z^{k+1} = (k+1)/(k+2) * ((1+gamma) PDHG(z^k) - gamma z^k) + 1/(k+2) * z0.
/// Returns the new iterate (caches combined affinely, no extra products) and
/// the inner step output, which the caller reuses for the restart residual.
std::pair<Iterate, PdhgStepOutput> halpern_reflected_step(const Iterate& z, const Iterate& anchor,
                                                          long k, const StepConfig& cfg,
                                                          const LpProblem& problem);

/// Evaluates the three restart conditions against r_current = r(z^{n,k}) in
/// priority order: sufficient decay, necessary decay without local progress,
/// artificial (k >= beta_artificial * total). Records r_current as r_prev for
/// the next query. Returns none when k == 0 (no anchor residual yet).
RestartCondition check_restart(RestartState& state, double r_current);

/// Starts a new epoch at z_current: resets the anchor and inner counter,
/// updates the primal weight through the PID controller, refreshes the
/// epoch-start snapshot, and re-derives the step split from the new weight.
/// The anchor residual is re-measured on the next inner step under the new
/// weight (the canonical norm depends on it).
void do_restart(RestartState& state, const Iterate& z_current, PidState& pid, StepConfig& cfg);

/// PID update of the primal weight at a restart. The unknown optimum is
/// surrogated by the movement over the finished epoch:
///   e = log( sqrt(w) ||x - x_snapshot|| / ((1/sqrt(w)) ||y - y_snapshot||) ),
/// with e = 0 when either movement is negligible. The per-update change is
/// clamped to |dlog w| <= log 10 and w to [1e-8, 1e8]; the integral resets
/// when a clamp engages.
double pid_update(PidState& pid, const Iterate& z_current);

}  // namespace rhpdhg
