#pragma once

#include <utility>
#include <vector>

#include "rhpdhg/lp_problem.hpp"

namespace rhpdhg {

/// Diagonal preconditioning state. The scaled instance has matrix
/// D_row * A * D_col, objective D_col * c, variable bounds D_col^-1 * (lb, ub)
/// and constraint bounds D_row * (lb, ub); the sparsity pattern is unchanged.
struct ScalingInfo {
  std::vector<double> row_scale;
  std::vector<double> col_scale;
  bool active = false;

  static ScalingInfo identity(const LpProblem& problem);
};

/// Iterative l-inf equilibration: each pass divides row i by sqrt(max_j |a_ij|)
/// and column j by sqrt(max_i |a_ij|). Empty rows/columns keep scale 1.
std::pair<LpProblem, ScalingInfo> ruiz_equilibrate(const LpProblem& problem, int iterations);

/// One alpha=1 pass: row i scaled by 1/sqrt(||row i||_1), column j by
/// 1/sqrt(||col j||_1), composed into `info` (scales multiply).
LpProblem pock_chambolle_scale(const LpProblem& problem, ScalingInfo& info);

/// Maps an iterate of the scaled instance back to the original one:
/// x = D_col * x_bar, y = D_row * y_bar. Caches are invalidated; products
/// must be recomputed against the original matrix.
Iterate unscale_iterate(const Iterate& scaled, const ScalingInfo& info);

}  // namespace rhpdhg
