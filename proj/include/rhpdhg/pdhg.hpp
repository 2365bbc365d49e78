#pragma once

#include <cstdint>
#include <span>

#include "rhpdhg/lp_problem.hpp"

namespace rhpdhg {

/// Step parameters of the primal-dual update. The primal step is
/// step_size / primal_weight and the dual step is step_size * primal_weight,
/// so their product step_size^2 stays below 1/||A||_2^2 and the canonical
/// norm matrix stays positive semidefinite for every primal weight.
struct StepConfig {
  double step_size = 1.0;          // eta
  double primal_weight = 1.0;      // omega
  double reflection = 1.0;         // gamma, in [0, 1]
  double matrix_norm_estimate = 0.0;

  double primal_step() const { return step_size / primal_weight; }
  double dual_step() const { return step_size * primal_weight; }

  /// Throws UsageError when positivity, the reflection range, or the
  /// step_size * ||A|| <= 0.99 PSD margin is violated.
  void validate() const;
};

/// Result of one PDHG update: the next iterate with fresh caches plus the
/// displacement z - z^+ (whose A*dx is recoverable from caches for free).
struct PdhgStepOutput {
  std::vector<double> x_next;
  std::vector<double> y_next;
  std::vector<double> ax_next;
  std::vector<double> aty_next;
  std::vector<double> dx;  // x - x_next
  std::vector<double> dy;  // y - y_next
};

/// One vanilla PDHG update:
///   x+ = proj_X(x - tau (c - A^T y))
///   y+ = y - sigma A(2x+ - x) - sigma proj_{-S}(sigma^-1 y - A(2x+ - x))
/// Costs exactly two fresh matrix products (A x+ and A^T y+); A(2x+ - x) is
/// assembled from the caches as 2 Ax+ - Ax.
PdhgStepOutput pdhg_step(const Iterate& z, const LpProblem& problem, const StepConfig& cfg);

/// sqrt( (w/eta)||x||^2 + (1/(eta w))||y||^2 + 2 y^T (A x) ) with the caller
/// supplying ax = A*x. Radicands in [-1e-12 * scale, 0] clamp to zero; worse
/// indicates a PSD violation and throws NumericalBreakdownError.
double p_norm(std::span<const double> x, std::span<const double> y,
              std::span<const double> ax, const StepConfig& cfg);

/// Convenience overload that computes A*x (one matrix product).
double p_norm(std::span<const double> x, std::span<const double> y, const StepConfig& cfg,
              const LpProblem& problem);

/// ||z - PDHG(z)||_P evaluated from an already-computed step output; costs no
/// matrix products (A dx = Ax - Ax+ comes from the caches).
double fixed_point_residual(const Iterate& z, const PdhgStepOutput& out, const StepConfig& cfg);

struct PowerIterationResult {
  double value = 0.0;
  bool converged = false;
  long iterations = 0;
};

/// ||A||_2 estimate via power iteration on A^T A from a deterministic seeded
/// start. Stops once the relative change of the estimate drops below tol and
/// the geometric tail extrapolation of the remaining error is below tol as
/// well; an empty matrix yields 0. Non-convergence returns the last estimate
/// with `converged == false`.
PowerIterationResult power_iteration_norm(const SparseMatrix& matrix, double tol = 1e-4,
                                          long max_iters = 5000, std::uint64_t seed = 0);

/// Constant stepsize multiplier / ||A||_2; 1.0 for an empty matrix.
double default_stepsize(double norm_estimate, double multiplier = 0.99);

}  // namespace rhpdhg
