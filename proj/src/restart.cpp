#include "rhpdhg/restart.hpp"

#include <cmath>

namespace rhpdhg {

namespace {
double distance2(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double norm2(std::span<const double> a) {
  double acc = 0.0;
  for (double v : a) acc += v * v;
  return std::sqrt(acc);
}

void affine_combine(std::vector<double>& out, double a, const std::vector<double>& next,
                    double g, const std::vector<double>& cur, double b,
                    const std::vector<double>& anchor) {
  // out = a * ((1+g) * next - g * cur) + b * anchor
  out.resize(next.size());
  for (std::size_t i = 0; i < next.size(); ++i)
    out[i] = a * ((1.0 + g) * next[i] - g * cur[i]) + b * anchor[i];
}
}  // namespace

double initial_weight() { return 1.0; }

std::pair<Iterate, PdhgStepOutput> halpern_reflected_step(const Iterate& z, const Iterate& anchor,
                                                          long k, const StepConfig& cfg,
                                                          const LpProblem& problem) {
  PdhgStepOutput out = pdhg_step(z, problem, cfg);
  const double a = static_cast<double>(k + 1) / static_cast<double>(k + 2);
  const double b = 1.0 / static_cast<double>(k + 2);
  const double g = cfg.reflection;

  Iterate next;
  affine_combine(next.x, a, out.x_next, g, z.x, b, anchor.x);
  affine_combine(next.y, a, out.y_next, g, z.y, b, anchor.y);
  // The update is affine, so the caches combine the same way at no cost.
  affine_combine(next.ax, a, out.ax_next, g, z.ax, b, anchor.ax);
  affine_combine(next.aty, a, out.aty_next, g, z.aty, b, anchor.aty);
  next.ax_valid = true;
  next.aty_valid = true;
  return {std::move(next), std::move(out)};
}

RestartCondition check_restart(RestartState& state, double r_current) {
  RestartCondition verdict = RestartCondition::none;
  if (state.k >= 1 && std::isfinite(state.r_anchor)) {
    if (r_current <= state.beta_sufficient * state.r_anchor) {
      verdict = RestartCondition::sufficient;
    } else if (r_current <= state.beta_necessary * state.r_anchor &&
               r_current > state.r_prev) {
      verdict = RestartCondition::necessary_no_progress;
    } else if (static_cast<double>(state.k) >=
               state.beta_artificial * static_cast<double>(state.total)) {
      verdict = RestartCondition::artificial;
    }
  }
  state.r_prev = r_current;
  return verdict;
}

void do_restart(RestartState& state, const Iterate& z_current, PidState& pid, StepConfig& cfg) {
  cfg.primal_weight = pid_update(pid, z_current);
  pid.snapshot_x = z_current.x;
  pid.snapshot_y = z_current.y;
  state.anchor = z_current;
  state.k = 0;
  state.n += 1;
  state.restart_count += 1;
  // Residuals restart fresh: the anchor residual is measured on the next
  // inner step under the new weight.
  state.r_anchor = std::numeric_limits<double>::infinity();
  state.r_prev = std::numeric_limits<double>::infinity();
}

double pid_update(PidState& pid, const Iterate& z_current) {
  const double dx = distance2(z_current.x, pid.snapshot_x);
  const double dy = distance2(z_current.y, pid.snapshot_y);

  double error = 0.0;
  const bool informative = dx > 1e-10 * (1.0 + norm2(z_current.x)) &&
                           dy > 1e-10 * (1.0 + norm2(z_current.y));
  if (informative)
    error = std::log(pid.omega) + std::log(dx) - std::log(dy);

  pid.integral += error;
  double delta = -(pid.kp * error + pid.ki * pid.integral +
                   pid.kd * (error - pid.prev_error));
  pid.prev_error = error;

  bool clamped = false;
  const double max_step = std::log(10.0);
  if (delta > max_step) {
    delta = max_step;
    clamped = true;
  } else if (delta < -max_step) {
    delta = -max_step;
    clamped = true;
  }
  double omega = delta == 0.0 ? pid.omega : std::exp(std::log(pid.omega) + delta);
  if (omega < 1e-8) {
    omega = 1e-8;
    clamped = true;
  } else if (omega > 1e8) {
    omega = 1e8;
    clamped = true;
  }
  if (clamped) pid.integral = 0.0;  // avoid windup against the guard rails
  pid.omega = omega;
  return omega;
}

}  // namespace rhpdhg
