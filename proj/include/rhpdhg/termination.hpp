#pragma once

#include <limits>

#include "rhpdhg/lp_problem.hpp"

namespace rhpdhg {

/// The six relative-KKT scalars with their denominators. The duality gap is
/// |c^T x + p(-y; con_lb, con_ub) + p(-r; var_lb, var_ub)|; an infinite
/// p-value makes the gap +inf, never NaN.
struct KktResiduals {
  double gap_abs = 0.0;
  double gap_rel = 0.0;
  double primal_inf = 0.0;
  double primal_rel = 0.0;
  double dual_eq = 0.0;
  double dual_cone = 0.0;
  double gap_denom = 1.0;     // 1 + |p-terms| + |c^T x|
  double primal_denom = 1.0;  // 1 + ||(L, U)||_2 over finite entries
  double dual_denom = 1.0;    // 1 + ||c||_2
};

struct ToleranceConfig {
  double epsilon = 1e-4;
  long check_interval = 64;
  double time_limit_seconds = std::numeric_limits<double>::infinity();
  long iteration_limit = std::numeric_limits<long>::max();
};

/// r = proj_R(c - A^T y): the dual slack clipped into the sign cone determined
/// by the finiteness pattern of the variable bounds (free -> {0}, lower-only
/// -> R+, upper-only -> R-, boxed -> R).
std::vector<double> reduced_costs(const LpProblem& problem, std::span<const double> y);
/// Same with a precomputed A^T y (no matrix product).
std::vector<double> reduced_costs_from_slack(const LpProblem& problem,
                                             std::span<const double> aty);

/// Residuals at (x, y) on the given (original, unscaled) instance. Computes
/// the two matrix products internally.
KktResiduals kkt_residuals(const LpProblem& problem, std::span<const double> x,
                           std::span<const double> y);
/// Same with precomputed products (no matrix products spent).
KktResiduals kkt_residuals(const LpProblem& problem, std::span<const double> x,
                           std::span<const double> y, std::span<const double> ax,
                           std::span<const double> aty);

/// All four relative inequalities at epsilon, non-strict.
bool is_optimal(const KktResiduals& res, const ToleranceConfig& tol);

}  // namespace rhpdhg
