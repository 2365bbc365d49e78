#include "rhpdhg/scaling.hpp"

#include <cmath>

namespace rhpdhg {

namespace {

/// Rebuilds the instance under cumulative scales D_row, D_col.
LpProblem apply_scales(const LpProblem& problem, const std::vector<double>& row_scale,
                       const std::vector<double>& col_scale) {
  LpProblem out;
  out.name = problem.name;
  out.maximization = problem.maximization;
  out.objective_offset = problem.objective_offset;  // never scaled
  out.matrix = problem.matrix.scaled(row_scale, col_scale);
  const std::size_t n = problem.objective.size();
  const std::size_t m = problem.con_lb.size();
  out.objective.resize(n);
  out.var_lb.resize(n);
  out.var_ub.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.objective[j] = col_scale[j] * problem.objective[j];
    out.var_lb[j] = problem.var_lb[j] / col_scale[j];
    out.var_ub[j] = problem.var_ub[j] / col_scale[j];
  }
  out.con_lb.resize(m);
  out.con_ub.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.con_lb[i] = row_scale[i] * problem.con_lb[i];
    out.con_ub[i] = row_scale[i] * problem.con_ub[i];
  }
  return out;
}

}  // namespace

ScalingInfo ScalingInfo::identity(const LpProblem& problem) {
  ScalingInfo info;
  info.row_scale.assign(static_cast<std::size_t>(problem.num_cons()), 1.0);
  info.col_scale.assign(static_cast<std::size_t>(problem.num_vars()), 1.0);
  info.active = false;
  return info;
}

std::pair<LpProblem, ScalingInfo> ruiz_equilibrate(const LpProblem& problem, int iterations) {
  ScalingInfo info = ScalingInfo::identity(problem);
  info.active = true;

  std::vector<Triplet> entries = problem.matrix.to_triplets();
  std::vector<double> row_max(info.row_scale.size());
  std::vector<double> col_max(info.col_scale.size());
  for (int pass = 0; pass < iterations; ++pass) {
    std::fill(row_max.begin(), row_max.end(), 0.0);
    std::fill(col_max.begin(), col_max.end(), 0.0);
    for (const Triplet& t : entries) {
      const double a = std::abs(t.value);
      if (a > row_max[t.row]) row_max[t.row] = a;
      if (a > col_max[t.col]) col_max[t.col] = a;
    }
    for (double& v : row_max) v = v > 0.0 ? std::sqrt(v) : 1.0;
    for (double& v : col_max) v = v > 0.0 ? std::sqrt(v) : 1.0;
    for (Triplet& t : entries) t.value /= row_max[t.row] * col_max[t.col];
    for (std::size_t i = 0; i < info.row_scale.size(); ++i) info.row_scale[i] /= row_max[i];
    for (std::size_t j = 0; j < info.col_scale.size(); ++j) info.col_scale[j] /= col_max[j];
  }
  return {apply_scales(problem, info.row_scale, info.col_scale), info};
}

LpProblem pock_chambolle_scale(const LpProblem& problem, ScalingInfo& info) {
  std::vector<double> row_norm;
  std::vector<double> col_norm;
  problem.matrix.one_norms(row_norm, col_norm);
  for (double& v : row_norm) v = v > 0.0 ? 1.0 / std::sqrt(v) : 1.0;
  for (double& v : col_norm) v = v > 0.0 ? 1.0 / std::sqrt(v) : 1.0;
  LpProblem out = apply_scales(problem, row_norm, col_norm);
  for (std::size_t i = 0; i < info.row_scale.size(); ++i) info.row_scale[i] *= row_norm[i];
  for (std::size_t j = 0; j < info.col_scale.size(); ++j) info.col_scale[j] *= col_norm[j];
  info.active = true;
  return out;
}

Iterate unscale_iterate(const Iterate& scaled, const ScalingInfo& info) {
  Iterate out;
  out.x.resize(scaled.x.size());
  out.y.resize(scaled.y.size());
  for (std::size_t j = 0; j < scaled.x.size(); ++j) out.x[j] = info.col_scale[j] * scaled.x[j];
  for (std::size_t i = 0; i < scaled.y.size(); ++i) out.y[i] = info.row_scale[i] * scaled.y[i];
  out.ax.assign(scaled.y.size(), 0.0);
  out.aty.assign(scaled.x.size(), 0.0);
  out.ax_valid = false;
  out.aty_valid = false;
  return out;
}

}  // namespace rhpdhg
