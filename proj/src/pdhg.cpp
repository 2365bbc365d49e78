#include "rhpdhg/pdhg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "rhpdhg/errors.hpp"

namespace rhpdhg {

namespace {
double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2_squared(std::span<const double> a) { return dot(a, a); }
}  // namespace

void StepConfig::validate() const {
  if (!(step_size > 0.0) || !std::isfinite(step_size))
    throw UsageError("step size must be positive and finite");
  if (!(primal_weight > 0.0) || !std::isfinite(primal_weight))
    throw UsageError("primal weight must be positive and finite");
  if (!(reflection >= 0.0 && reflection <= 1.0))
    throw UsageError("reflection coefficient must lie in [0, 1]");
  if (matrix_norm_estimate > 0.0 &&
      step_size * matrix_norm_estimate > 0.99 * (1.0 + 1e-9))
    throw UsageError("step size violates the PSD margin step_size * ||A|| <= 0.99");
}

PdhgStepOutput pdhg_step(const Iterate& z, const LpProblem& problem, const StepConfig& cfg) {
  const double tau = cfg.primal_step();
  const double sigma = cfg.dual_step();
  const std::size_t n = z.x.size();
  const std::size_t m = z.y.size();

  PdhgStepOutput out;
  out.x_next.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = z.x[j] - tau * (problem.objective[j] - z.aty[j]);
    out.x_next[j] = std::min(std::max(t, problem.var_lb[j]), problem.var_ub[j]);
  }
  out.ax_next.resize(m);
  problem.matrix.multiply(out.x_next, out.ax_next);

  out.y_next.resize(m);
  const double sigma_inv = 1.0 / sigma;
  for (std::size_t i = 0; i < m; ++i) {
    const double ax_mid = 2.0 * out.ax_next[i] - z.ax[i];  // A(2x+ - x) from caches
    const double v = sigma_inv * z.y[i] - ax_mid;
    const double proj = std::min(std::max(v, -problem.con_ub[i]), -problem.con_lb[i]);
    out.y_next[i] = z.y[i] - sigma * ax_mid - sigma * proj;
  }
  out.aty_next.resize(n);
  problem.matrix.multiply_transpose(out.y_next, out.aty_next);

  out.dx.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.dx[j] = z.x[j] - out.x_next[j];
  out.dy.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.dy[i] = z.y[i] - out.y_next[i];
  return out;
}

namespace {
double quadratic_form(std::span<const double> x, std::span<const double> y,
                      std::span<const double> ax, const StepConfig& cfg, double* diag_out) {
  const double primal_scale = cfg.primal_weight / cfg.step_size;
  const double dual_scale = 1.0 / (cfg.step_size * cfg.primal_weight);
  const double diag = primal_scale * norm2_squared(x) + dual_scale * norm2_squared(y);
  if (diag_out) *diag_out = diag;
  return diag + 2.0 * dot(y, ax);
}

[[noreturn]] void throw_indefinite(double q) {
  throw NumericalBreakdownError("canonical norm radicand " + std::to_string(q) +
                                " is negative beyond roundoff; the P matrix is indefinite");
}
}  // namespace

double p_norm(std::span<const double> x, std::span<const double> y,
              std::span<const double> ax, const StepConfig& cfg) {
  double diag = 0.0;
  const double q = quadratic_form(x, y, ax, cfg, &diag);
  if (q < 0.0) {
    if (q >= -1e-12 * std::max(diag, 1e-300)) return 0.0;
    throw_indefinite(q);
  }
  return std::sqrt(q);
}

double p_norm(std::span<const double> x, std::span<const double> y, const StepConfig& cfg,
              const LpProblem& problem) {
  std::vector<double> ax(y.size());
  problem.matrix.multiply(x, ax);
  return p_norm(x, y, ax, cfg);
}

double fixed_point_residual(const Iterate& z, const PdhgStepOutput& out, const StepConfig& cfg) {
  std::vector<double> d_ax(z.ax.size());
  for (std::size_t i = 0; i < d_ax.size(); ++i) d_ax[i] = z.ax[i] - out.ax_next[i];
  double diag = 0.0;
  const double q = quadratic_form(out.dx, out.dy, d_ax, cfg, &diag);
  if (q >= 0.0) return std::sqrt(q);
  if (q >= -1e-12 * std::max(diag, 1e-300)) return 0.0;
  // Once the displacement reaches the roundoff floor of the iterate itself,
  // the doubly-cancelled cross term is pure noise; a genuine PSD violation
  // shows up at the scale of a meaningful displacement instead.
  double iterate_scale = 0.0;
  quadratic_form(z.x, z.y, std::vector<double>(z.y.size(), 0.0), cfg, &iterate_scale);
  if (q >= -1e-24 * (1.0 + iterate_scale)) return 0.0;
  throw_indefinite(q);
}

PowerIterationResult power_iteration_norm(const SparseMatrix& matrix, double tol,
                                          long max_iters, std::uint64_t seed) {
  PowerIterationResult result;
  if (matrix.nnz() == 0) {
    result.converged = true;
    return result;
  }

  const std::size_t n = static_cast<std::size_t>(matrix.cols());
  std::vector<double> v(n);
  std::mt19937_64 eng(seed);
  for (double& e : v) e = 2.0 * (static_cast<double>(eng() >> 11) * 0x1.0p-53) - 1.0;
  {
    const double nv = std::sqrt(norm2_squared(v));
    for (double& e : v) e /= nv;
  }

  std::vector<double> av(static_cast<std::size_t>(matrix.rows()));
  std::vector<double> w(n);
  double sigma_prev = 0.0;
  double change_prev = std::numeric_limits<double>::infinity();
  for (long it = 1; it <= max_iters; ++it) {
    matrix.multiply(v, av);
    matrix.multiply_transpose(av, w);
    const double lambda = dot(v, w);  // Rayleigh quotient of A^T A, v is unit
    const double sigma = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
    result.iterations = it;
    result.value = sigma;

    const double wn = std::sqrt(norm2_squared(w));
    if (wn == 0.0) {
      // v landed in the null space of A^T A; with a random start this only
      // happens for an (effectively) zero matrix.
      result.converged = true;
      return result;
    }
    for (std::size_t j = 0; j < n; ++j) v[j] = w[j] / wn;

    const double change = std::abs(sigma - sigma_prev);
    if (it >= 3 && change <= tol * std::max(sigma, 1e-300)) {
      // Rayleigh estimates increase monotonically, so the remaining gap is
      // bounded by the geometric tail of the per-step changes.
      const double ratio = std::min(change / std::max(change_prev, 1e-300), 0.999);
      const double tail = change * ratio / (1.0 - ratio);
      if (tail <= tol * std::max(sigma, 1e-300)) {
        result.converged = true;
        return result;
      }
    }
    sigma_prev = sigma;
    change_prev = change;
  }
  return result;  // flagged: converged == false
}

double default_stepsize(double norm_estimate, double multiplier) {
  if (norm_estimate < 0.0 || std::isnan(norm_estimate))
    throw UsageError("matrix norm estimate must be nonnegative");
  if (!(multiplier > 0.0 && multiplier <= 0.99))
    throw UsageError("stepsize multiplier must lie in (0, 0.99]");
  if (norm_estimate == 0.0) return 1.0;
  return multiplier / norm_estimate;
}

}  // namespace rhpdhg
