#include "rhpdhg/solver.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <tuple>

#include "rhpdhg/errors.hpp"
#include "rhpdhg/pdhg.hpp"
#include "rhpdhg/restart.hpp"
#include "rhpdhg/scaling.hpp"

namespace rhpdhg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CheckResult {
  Iterate original;  // unscaled iterate with fresh products
  KktResiduals residuals;
  bool optimal = false;
};

/// Unscales, evaluates the KKT inequalities on the original instance, and
/// refreshes the scaled caches from the exact products (D_row (A x) and
/// D_col (A^T y)), so cache drift never outlives a check. Two matrix products.
CheckResult kkt_check(Iterate& z, const LpProblem& original, const ScalingInfo& info,
                      const ToleranceConfig& tol) {
  CheckResult out;
  out.original = unscale_iterate(z, info);
  out.original.ax.resize(out.original.y.size());
  out.original.aty.resize(out.original.x.size());
  original.matrix.multiply(out.original.x, out.original.ax);
  original.matrix.multiply_transpose(out.original.y, out.original.aty);
  out.original.ax_valid = true;
  out.original.aty_valid = true;
  for (std::size_t i = 0; i < z.ax.size(); ++i) z.ax[i] = info.row_scale[i] * out.original.ax[i];
  for (std::size_t j = 0; j < z.aty.size(); ++j)
    z.aty[j] = info.col_scale[j] * out.original.aty[j];
  out.residuals =
      kkt_residuals(original, out.original.x, out.original.y, out.original.ax, out.original.aty);
  out.optimal = is_optimal(out.residuals, tol);
  return out;
}

void log_progress(const SolverConfig& cfg, long iter, double fpr, const KktResiduals& res,
                  double omega, long restarts) {
  if (cfg.verbosity < 1) return;
  std::fprintf(stderr,
               "iter %8ld  fpr %9.3e  gap %9.3e  primal %9.3e  dual %9.3e  omega %9.3e  "
               "restarts %ld\n",
               iter, fpr, res.gap_rel, res.primal_rel, res.dual_eq / res.dual_denom, omega,
               restarts);
}

}  // namespace

SolutionReport solve(const LpProblem& problem, const SolverConfig& cfg) {
  cfg.validate();
  problem.validate();
  const auto t0 = Clock::now();

  // (1) optional diagonal preconditioning
  LpProblem scaled;
  ScalingInfo info;
  const std::uint64_t spmv_before_setup = spmv_counter::value();
  if (cfg.scaling_enabled) {
    std::tie(scaled, info) = ruiz_equilibrate(problem, cfg.ruiz_iterations);
    if (cfg.pock_chambolle) scaled = pock_chambolle_scale(scaled, info);
  } else {
    scaled = problem;
    info = ScalingInfo::identity(problem);
  }

  // (2) constant stepsize from the scaled matrix norm
  const PowerIterationResult pi =
      power_iteration_norm(scaled.matrix, cfg.power_tol, cfg.power_max_iters, cfg.power_seed);
  StepConfig step;
  step.matrix_norm_estimate = pi.value;
  step.step_size = default_stepsize(pi.value, cfg.stepsize_multiplier);
  step.primal_weight = cfg.initial_weight;
  step.reflection = cfg.reflection_gamma;
  step.validate();

  // (3) all-zero start; the anchor is the start point
  Iterate z = Iterate::zeros(scaled);
  RestartState restart;
  restart.anchor = z;
  restart.beta_sufficient = cfg.beta_sufficient;
  restart.beta_necessary = cfg.beta_necessary;
  restart.beta_artificial = cfg.beta_artificial;
  PidState pid;
  pid.kp = cfg.pid_kp;
  pid.ki = cfg.pid_ki;
  pid.kd = cfg.pid_kd;
  pid.omega = cfg.initial_weight;
  pid.snapshot_x = z.x;
  pid.snapshot_y = z.y;

  ToleranceConfig tol;
  tol.epsilon = cfg.epsilon;
  tol.check_interval = cfg.check_interval;
  tol.time_limit_seconds = cfg.time_limit_seconds;
  tol.iteration_limit = cfg.iteration_limit;

  SolutionReport report;
  report.config = cfg;
  report.matrix_norm_estimate = pi.value;
  report.power_iterations = pi.iterations;
  report.spmv_setup = spmv_counter::value() - spmv_before_setup;

  if (cfg.verbosity >= 1) {
    std::fprintf(stderr, "%s: %ld rows, %ld cols, %ld nonzeros, ||A|| ~ %.6e, eta %.6e\n",
                 problem.name.empty() ? "instance" : problem.name.c_str(),
                 static_cast<long>(problem.num_cons()), static_cast<long>(problem.num_vars()),
                 static_cast<long>(problem.matrix.nnz()), pi.value, step.step_size);
  }

  std::uint64_t spmv_loop = 0;
  std::uint64_t spmv_checks = 0;
  double running_min_fpr = std::numeric_limits<double>::infinity();
  double last_fpr = std::numeric_limits<double>::infinity();
  bool have_inner = false;
  PdhgStepOutput last_inner;
  CheckResult last_check;
  SolveStatus status = SolveStatus::iteration_limit;
  bool decided = false;

  // initial check: the zero iterate may already be optimal, and a zero time
  // budget must still report residuals at the start point
  {
    const std::uint64_t before = spmv_counter::value();
    last_check = kkt_check(z, problem, info, tol);
    spmv_checks += spmv_counter::value() - before;
    ++report.kkt_checks;
    if (last_check.optimal) {
      status = SolveStatus::optimal;
      decided = true;
    }
  }

  while (!decided) {
    if (restart.total >= tol.iteration_limit) {
      status = SolveStatus::iteration_limit;
      break;
    }
    if (seconds_since(t0) >= tol.time_limit_seconds) {
      status = SolveStatus::time_limit;
      break;
    }

    const std::uint64_t before_step = spmv_counter::value();
    auto [z_next, inner] = halpern_reflected_step(z, restart.anchor, restart.k, step, scaled);
    const double r_cur = fixed_point_residual(z, inner, step);
    spmv_loop += spmv_counter::value() - before_step;

    RestartCondition verdict = RestartCondition::none;
    if (restart.k == 0) {
      restart.r_anchor = r_cur;
      restart.r_prev = r_cur;
    } else {
      verdict = check_restart(restart, r_cur);
    }
    if (!cfg.restarts_enabled) verdict = RestartCondition::none;

    z = std::move(z_next);
    restart.k += 1;
    restart.total += 1;
    last_fpr = r_cur;
    running_min_fpr = std::min(running_min_fpr, r_cur);
    last_inner = std::move(inner);
    have_inner = true;
    if (cfg.record_residual_history) report.fixed_point_residual_history.push_back(r_cur);

    const bool check_due =
        restart.total % tol.check_interval == 0 || verdict != RestartCondition::none;
    if (check_due) {
      const std::uint64_t before = spmv_counter::value();
      last_check = kkt_check(z, problem, info, tol);
      spmv_checks += spmv_counter::value() - before;
      ++report.kkt_checks;
      log_progress(cfg, restart.total, r_cur, last_check.residuals, step.primal_weight,
                   restart.restart_count);
      if (last_check.optimal) {
        status = SolveStatus::optimal;
        break;
      }
    }

    if (verdict != RestartCondition::none) do_restart(restart, z, pid, step);
  }

  // final residuals at the returned iterate, unless the loop just checked it
  const bool need_final = status != SolveStatus::optimal;
  if (need_final) {
    const std::uint64_t before = spmv_counter::value();
    last_check = kkt_check(z, problem, info, tol);
    spmv_checks += spmv_counter::value() - before;
    ++report.kkt_checks;
  }

  report.status = status;
  report.x = std::move(last_check.original.x);
  report.y = std::move(last_check.original.y);
  report.reduced_costs = reduced_costs_from_slack(problem, last_check.original.aty);
  const double internal_objective =
      [&] {
        double acc = problem.objective_offset;
        for (std::size_t j = 0; j < report.x.size(); ++j)
          acc += problem.objective[j] * report.x[j];
        return acc;
      }();
  report.objective = problem.maximization ? -internal_objective : internal_objective;
  report.residuals = last_check.residuals;
  report.iterations = restart.total;
  report.restart_count = restart.restart_count;
  report.final_fixed_point_residual = last_fpr;
  report.final_primal_weight = step.primal_weight;
  report.spmv_loop = spmv_loop;
  report.spmv_checks = spmv_checks;

  // diagnostics: residuals of the last inner PDHG iterate, when one exists
  if (have_inner) {
    Iterate inner_it;
    inner_it.x = std::move(last_inner.x_next);
    inner_it.y = std::move(last_inner.y_next);
    const Iterate inner_orig = unscale_iterate(inner_it, info);
    report.inner_residuals = kkt_residuals(problem, inner_orig.x, inner_orig.y);
  }

  report.wall_time_seconds = seconds_since(t0);
  return report;
}

}  // namespace rhpdhg
