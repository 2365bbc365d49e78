#include "rhpdhg/termination.hpp"

#include <cmath>

#include "rhpdhg/errors.hpp"

namespace rhpdhg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(std::span<const double> a) {
  double acc = 0.0;
  for (double v : a) acc += v * v;
  return std::sqrt(acc);
}

double clip_to_sign_cone(double slack, double lb, double ub) {
  const bool lower_finite = lb > -kInf;
  const bool upper_finite = ub < kInf;
  if (lower_finite && upper_finite) return slack;                  // R
  if (lower_finite) return std::max(slack, 0.0);                   // R+
  if (upper_finite) return std::min(slack, 0.0);                   // R-
  return 0.0;                                                      // {0}
}
}  // namespace

std::vector<double> reduced_costs_from_slack(const LpProblem& problem,
                                             std::span<const double> aty) {
  std::vector<double> r(aty.size());
  for (std::size_t j = 0; j < r.size(); ++j)
    r[j] = clip_to_sign_cone(problem.objective[j] - aty[j], problem.var_lb[j],
                             problem.var_ub[j]);
  return r;
}

std::vector<double> reduced_costs(const LpProblem& problem, std::span<const double> y) {
  std::vector<double> aty(static_cast<std::size_t>(problem.num_vars()));
  problem.matrix.multiply_transpose(y, aty);
  return reduced_costs_from_slack(problem, aty);
}

KktResiduals kkt_residuals(const LpProblem& problem, std::span<const double> x,
                           std::span<const double> y) {
  std::vector<double> ax(static_cast<std::size_t>(problem.num_cons()));
  std::vector<double> aty(static_cast<std::size_t>(problem.num_vars()));
  problem.matrix.multiply(x, ax);
  problem.matrix.multiply_transpose(y, aty);
  return kkt_residuals(problem, x, y, ax, aty);
}

KktResiduals kkt_residuals(const LpProblem& problem, std::span<const double> x,
                           std::span<const double> y, std::span<const double> ax,
                           std::span<const double> aty) {
  for (double v : x)
    if (std::isnan(v)) throw NumericalBreakdownError("NaN in primal iterate");
  for (double v : y)
    if (std::isnan(v)) throw NumericalBreakdownError("NaN in dual iterate");

  KktResiduals res;
  const std::vector<double> r = reduced_costs_from_slack(problem, aty);

  // duality gap
  double p_terms;
  {
    std::vector<double> neg_y(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) neg_y[i] = -y[i];
    const double py = p_support(neg_y, problem.con_lb, problem.con_ub);
    std::vector<double> neg_r(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) neg_r[j] = -r[j];
    const double pr = p_support(neg_r, problem.var_lb, problem.var_ub);
    p_terms = py + pr;  // only +inf can appear
  }
  const double primal_value = dot(problem.objective, x);
  if (p_terms == kInf) {
    res.gap_abs = kInf;
    res.gap_denom = kInf;
    res.gap_rel = kInf;
  } else {
    res.gap_abs = std::abs(primal_value + p_terms);
    res.gap_denom = 1.0 + std::abs(p_terms) + std::abs(primal_value);
    res.gap_rel = res.gap_abs / res.gap_denom;
  }

  // primal feasibility against [L, U]
  double viol2 = 0.0;
  double bound2 = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double proj = std::min(std::max(ax[i], problem.con_lb[i]), problem.con_ub[i]);
    const double d = ax[i] - proj;
    viol2 += d * d;
    if (std::isfinite(problem.con_lb[i])) bound2 += problem.con_lb[i] * problem.con_lb[i];
    if (std::isfinite(problem.con_ub[i])) bound2 += problem.con_ub[i] * problem.con_ub[i];
  }
  res.primal_inf = std::sqrt(viol2);
  res.primal_denom = 1.0 + std::sqrt(bound2);
  res.primal_rel = res.primal_inf / res.primal_denom;

  // dual feasibility
  double eq2 = 0.0;
  double cone2 = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double d = problem.objective[j] - aty[j] - r[j];
    eq2 += d * d;
    const double c = r[j] - clip_to_sign_cone(r[j], problem.var_lb[j], problem.var_ub[j]);
    cone2 += c * c;
  }
  res.dual_eq = std::sqrt(eq2);
  res.dual_cone = std::sqrt(cone2);
  res.dual_denom = 1.0 + norm2(problem.objective);
  return res;
}

bool is_optimal(const KktResiduals& res, const ToleranceConfig& tol) {
  const double eps = tol.epsilon;
  return res.gap_rel <= eps && res.primal_rel <= eps &&
         res.dual_eq <= eps * res.dual_denom && res.dual_cone <= eps * res.dual_denom;
}

}  // namespace rhpdhg
