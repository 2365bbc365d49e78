#pragma once

#include <span>
#include <string>
#include <vector>

#include "rhpdhg/sparse_matrix.hpp"

namespace rhpdhg {

/// LP instance in the two-sided-bounds primal-dual form
///
///   min  c^T x + offset   s.t.  con_lb <= A x <= con_ub,  var_lb <= x <= var_ub.
///
/// Maximization instances are normalized at construction by negating c and the
/// offset; `maximization` records the original sense so reports can restore it.
/// Bounds may be +-inf; everything else is finite (validate() enforces this).
struct LpProblem {
  std::string name;
  std::vector<double> objective;
  double objective_offset = 0.0;
  SparseMatrix matrix;
  std::vector<double> var_lb;
  std::vector<double> var_ub;
  std::vector<double> con_lb;
  std::vector<double> con_ub;
  bool maximization = false;

  Index num_vars() const { return matrix.cols(); }
  Index num_cons() const { return matrix.rows(); }

  /// Throws InvalidProblemError on any model-invariant violation.
  void validate() const;

  friend bool operator==(const LpProblem& a, const LpProblem& b);
};

/// Componentwise clamp of v to [lb, ub]; infinite bounds are no-ops on that side.
std::vector<double> project_box(std::span<const double> v, std::span<const double> lb,
                                std::span<const double> ub);
void project_box_inplace(std::span<double> v, std::span<const double> lb,
                         std::span<const double> ub);

/// u^T y^+ - lb^T y^- with the convention 0 * (+-inf) = 0. Returns +inf when any
/// term is infinite (a dual-infeasible multiplier sign), never NaN.
double p_support(std::span<const double> y, std::span<const double> lb,
                 std::span<const double> ub);

/// Euclidean projection of s onto -S = {t : -con_ub <= t <= -con_lb}.
std::vector<double> project_dual_cone(std::span<const double> s, const LpProblem& problem);

/// Primal-dual pair plus cached matrix products. The caches, when flagged
/// valid, equal A*x and A^T*y up to roundoff of the affine updates that
/// produced them; they are refreshed from exact products at every KKT check.
struct Iterate {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> ax;
  std::vector<double> aty;
  bool ax_valid = false;
  bool aty_valid = false;

  static Iterate zeros(const LpProblem& problem);
};

}  // namespace rhpdhg
