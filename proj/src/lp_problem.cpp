#include "rhpdhg/lp_problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rhpdhg/errors.hpp"

namespace rhpdhg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_bound_pair(std::span<const double> lb, std::span<const double> ub,
                      const char* what) {
  for (std::size_t i = 0; i < lb.size(); ++i) {
    if (std::isnan(lb[i]) || std::isnan(ub[i]))
      throw InvalidProblemError(std::string(what) + " bound " + std::to_string(i) + " is NaN");
    if (lb[i] > ub[i])
      throw InvalidProblemError(std::string(what) + " bounds crossed at index " +
                                std::to_string(i));
    if (lb[i] == kInf || ub[i] == -kInf)
      throw InvalidProblemError(std::string(what) + " bound " + std::to_string(i) +
                                " has the wrong-signed infinity");
  }
}
}  // namespace

void LpProblem::validate() const {
  const Index n = matrix.cols();
  const Index m = matrix.rows();
  if (static_cast<Index>(objective.size()) != n)
    throw InvalidProblemError("objective length does not match matrix columns");
  if (static_cast<Index>(var_lb.size()) != n || static_cast<Index>(var_ub.size()) != n)
    throw InvalidProblemError("variable bound length does not match matrix columns");
  if (static_cast<Index>(con_lb.size()) != m || static_cast<Index>(con_ub.size()) != m)
    throw InvalidProblemError("constraint bound length does not match matrix rows");
  for (std::size_t j = 0; j < objective.size(); ++j)
    if (!std::isfinite(objective[j]))
      throw InvalidProblemError("objective coefficient " + std::to_string(j) + " is not finite");
  if (!std::isfinite(objective_offset))
    throw InvalidProblemError("objective offset is not finite");
  check_bound_pair(var_lb, var_ub, "variable");
  check_bound_pair(con_lb, con_ub, "constraint");
}

bool operator==(const LpProblem& a, const LpProblem& b) {
  return a.name == b.name && a.objective == b.objective &&
         a.objective_offset == b.objective_offset && a.matrix == b.matrix &&
         a.var_lb == b.var_lb && a.var_ub == b.var_ub && a.con_lb == b.con_lb &&
         a.con_ub == b.con_ub && a.maximization == b.maximization;
}

void project_box_inplace(std::span<double> v, std::span<const double> lb,
                         std::span<const double> ub) {
  if (v.size() != lb.size() || v.size() != ub.size())
    throw UsageError("project_box: length mismatch");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (lb[i] > ub[i]) throw InvalidProblemError("project_box: crossed bounds");
    v[i] = std::min(std::max(v[i], lb[i]), ub[i]);
  }
}

std::vector<double> project_box(std::span<const double> v, std::span<const double> lb,
                                std::span<const double> ub) {
  std::vector<double> out(v.begin(), v.end());
  project_box_inplace(out, lb, ub);
  return out;
}

double p_support(std::span<const double> y, std::span<const double> lb,
                 std::span<const double> ub) {
  if (y.size() != lb.size() || y.size() != ub.size())
    throw UsageError("p_support: length mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double yp = std::max(y[i], 0.0);
    const double yn = std::max(-y[i], 0.0);
    // 0 * (+-inf) = 0 by convention; any infinite product dominates.
    const double up = yp == 0.0 ? 0.0 : ub[i] * yp;
    const double lo = yn == 0.0 ? 0.0 : lb[i] * yn;
    if (up == kInf || lo == -kInf) return kInf;
    total += up - lo;
  }
  return total;
}

std::vector<double> project_dual_cone(std::span<const double> s, const LpProblem& problem) {
  if (static_cast<Index>(s.size()) != problem.num_cons())
    throw UsageError("project_dual_cone: length mismatch");
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    out[i] = std::min(std::max(s[i], -problem.con_ub[i]), -problem.con_lb[i]);
  return out;
}

Iterate Iterate::zeros(const LpProblem& problem) {
  Iterate z;
  z.x.assign(static_cast<std::size_t>(problem.num_vars()), 0.0);
  z.y.assign(static_cast<std::size_t>(problem.num_cons()), 0.0);
  z.ax.assign(static_cast<std::size_t>(problem.num_cons()), 0.0);
  z.aty.assign(static_cast<std::size_t>(problem.num_vars()), 0.0);
  z.ax_valid = true;
  z.aty_valid = true;
  return z;
}

}  // namespace rhpdhg
