#include "rhpdhg/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "rhpdhg/errors.hpp"

namespace rhpdhg {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::iteration_limit: return "iteration_limit";
    case SolveStatus::time_limit: return "time_limit";
  }
  return "unknown";
}

namespace {
std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_residuals(std::ostream& out, const char* prefix, const KktResiduals& r) {
  out << prefix << "gap_abs " << fmt(r.gap_abs) << "\n";
  out << prefix << "gap_rel " << fmt(r.gap_rel) << "\n";
  out << prefix << "primal_inf " << fmt(r.primal_inf) << "\n";
  out << prefix << "primal_rel " << fmt(r.primal_rel) << "\n";
  out << prefix << "dual_eq " << fmt(r.dual_eq) << "\n";
  out << prefix << "dual_cone " << fmt(r.dual_cone) << "\n";
  out << prefix << "gap_denom " << fmt(r.gap_denom) << "\n";
  out << prefix << "primal_denom " << fmt(r.primal_denom) << "\n";
  out << prefix << "dual_denom " << fmt(r.dual_denom) << "\n";
}

void write_vector(std::ostream& out, const char* key, const std::vector<double>& v) {
  out << key;
  for (double e : v) out << ' ' << fmt(e);
  out << "\n";
}
}  // namespace

void write_solution(const SolutionReport& report, std::ostream& out, bool include_vectors) {
  out << "rhpdhg_solution 1\n";
  out << "status " << to_string(report.status) << "\n";
  out << "converged " << (report.status == SolveStatus::optimal ? 1 : 0) << "\n";
  out << "objective " << fmt(report.objective) << "\n";
  out << "iterations " << report.iterations << "\n";
  out << "restarts " << report.restart_count << "\n";
  out << "wall_time_seconds " << fmt(report.wall_time_seconds) << "\n";
  write_residuals(out, "", report.residuals);
  out << "fixed_point_residual " << fmt(report.final_fixed_point_residual) << "\n";
  out << "final_primal_weight " << fmt(report.final_primal_weight) << "\n";
  out << "matrix_norm_estimate " << fmt(report.matrix_norm_estimate) << "\n";
  out << "power_iterations " << report.power_iterations << "\n";
  out << "kkt_checks " << report.kkt_checks << "\n";
  out << "spmv_loop " << report.spmv_loop << "\n";
  out << "spmv_checks " << report.spmv_checks << "\n";
  out << "spmv_setup " << report.spmv_setup << "\n";
  if (report.inner_residuals) write_residuals(out, "inner_", *report.inner_residuals);
  for (const auto& [key, value] : report.config.key_values())
    out << "config." << key << ' ' << value << "\n";
  out << "n " << report.x.size() << "\n";
  out << "m " << report.y.size() << "\n";
  if (include_vectors) {
    write_vector(out, "x", report.x);
    write_vector(out, "y", report.y);
    write_vector(out, "reduced_costs", report.reduced_costs);
  }
  out << "end\n";
}

void write_solution_file(const SolutionReport& report, const std::string& path,
                         bool include_vectors) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_solution(report, out, include_vectors);
  if (!out.good()) throw std::runtime_error("I/O failure writing '" + path + "'");
}

SolutionSummary read_solution_summary(std::istream& in) {
  SolutionSummary s;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto num = [&ls]() {
      std::string tok;
      ls >> tok;
      if (tok == "inf") return std::numeric_limits<double>::infinity();
      if (tok == "-inf") return -std::numeric_limits<double>::infinity();
      return std::stod(tok);
    };
    if (key == "status") ls >> s.status;
    else if (key == "objective") s.objective = num();
    else if (key == "iterations") s.iterations = static_cast<long>(num());
    else if (key == "restarts") s.restart_count = static_cast<long>(num());
    else if (key == "wall_time_seconds") s.wall_time_seconds = num();
    else if (key == "gap_abs") s.residuals.gap_abs = num();
    else if (key == "gap_rel") s.residuals.gap_rel = num();
    else if (key == "primal_inf") s.residuals.primal_inf = num();
    else if (key == "primal_rel") s.residuals.primal_rel = num();
    else if (key == "dual_eq") s.residuals.dual_eq = num();
    else if (key == "dual_cone") s.residuals.dual_cone = num();
    else if (key == "gap_denom") s.residuals.gap_denom = num();
    else if (key == "primal_denom") s.residuals.primal_denom = num();
    else if (key == "dual_denom") s.residuals.dual_denom = num();
  }
  return s;
}

}  // namespace rhpdhg
