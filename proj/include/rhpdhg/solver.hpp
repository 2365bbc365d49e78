#pragma once

#include "rhpdhg/config.hpp"
#include "rhpdhg/lp_problem.hpp"
#include "rhpdhg/report.hpp"

namespace rhpdhg {

/// Full solve pipeline: optional diagonal scaling, matrix-norm estimation by
/// power iteration, then the restarted reflected-Halpern loop from an all-zero
/// start, with KKT termination evaluated on the original instance every
/// check_interval iterations and at every restart.
SolutionReport solve(const LpProblem& problem, const SolverConfig& cfg);

}  // namespace rhpdhg
