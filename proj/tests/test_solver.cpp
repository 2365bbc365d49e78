#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "rhpdhg/bench.hpp"
#include "rhpdhg/errors.hpp"
#include "rhpdhg/mps.hpp"
#include "rhpdhg/solver.hpp"

using namespace rhpdhg;
using testutil::kInf;
using testutil::vec;

TEST_CASE("scalar LP solves to its known optimum") {
  const auto p = testutil::scalar_lp();
  SolverConfig cfg;
  cfg.epsilon = 1e-8;
  const SolutionReport rep = solve(p, cfg);
  CHECK(rep.status == SolveStatus::optimal);
  CHECK(rep.objective == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep.x[0] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(rep.y[0] == doctest::Approx(1.0).epsilon(1e-4));
  // the optimality claim is re-verifiable from the stored vectors
  const KktResiduals res = kkt_residuals(p, rep.x, rep.y);
  ToleranceConfig tol;
  tol.epsilon = 1e-8;
  CHECK(is_optimal(res, tol));
}

TEST_CASE("box-only LP matches the separable closed form") {
  // A empty: x_i goes to the lower bound when c_i > 0, upper when c_i < 0
  auto p = testutil::make_problem(0, 3, {}, {2.0, -1.0, 0.5}, {-1.0, -2.0, 0.25},
                                  {4.0, 3.0, 5.0}, {}, {});
  SolverConfig cfg;
  cfg.epsilon = 1e-8;
  const SolutionReport rep = solve(p, cfg);
  CHECK(rep.status == SolveStatus::optimal);
  CHECK(rep.x[0] == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(rep.x[1] == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(rep.x[2] == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(rep.objective == doctest::Approx(-2.0 - 3.0 + 0.125).epsilon(1e-7));
  CHECK(rep.iterations <= 200);
}

TEST_CASE("zero time budget reports limit status with residuals") {
  const auto p = testutil::scalar_lp();
  SolverConfig cfg;
  cfg.time_limit_seconds = 0.0;
  const SolutionReport rep = solve(p, cfg);
  CHECK(rep.status == SolveStatus::time_limit);
  CHECK(rep.iterations == 0);
  // best-iterate (the zero start) residuals are populated
  CHECK(rep.residuals.primal_inf == doctest::Approx(1.0));
}

TEST_CASE("iteration limit reports the final iterate") {
  const auto p = testutil::scalar_lp();
  SolverConfig cfg;
  cfg.iteration_limit = 3;
  cfg.epsilon = 1e-300;
  const SolutionReport rep = solve(p, cfg);
  CHECK(rep.status == SolveStatus::iteration_limit);
  CHECK(rep.iterations == 3);
}

TEST_CASE("solves are deterministic") {
  testutil::Rng rng(103);
  const auto p = testutil::random_feasible_lp(rng, 10, 15);
  SolverConfig cfg;
  cfg.epsilon = 1e-8;
  const SolutionReport a = solve(p, cfg);
  const SolutionReport b = solve(p, cfg);
  CHECK(a.status == b.status);
  CHECK(a.iterations == b.iterations);
  CHECK(a.objective == b.objective);  // bitwise
  CHECK(a.restart_count == b.restart_count);
  for (std::size_t j = 0; j < a.x.size(); ++j) CHECK(a.x[j] == b.x[j]);
}

TEST_CASE("the loop spends exactly two products per iteration plus two per check") {
  testutil::Rng rng(107);
  const auto p = testutil::random_feasible_lp(rng, 8, 12);
  SolverConfig cfg;
  cfg.epsilon = 1e-6;
  const SolutionReport rep = solve(p, cfg);
  CHECK(rep.spmv_loop == 2 * static_cast<std::uint64_t>(rep.iterations));
  CHECK(rep.spmv_checks == 2 * static_cast<std::uint64_t>(rep.kkt_checks));
}

TEST_CASE("scaling on and off both satisfy the original-instance criteria") {
  testutil::Rng rng(109);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = testutil::random_feasible_lp(rng, 8, 12);
    SolverConfig on;
    on.epsilon = 1e-8;
    SolverConfig off = on;
    off.scaling_enabled = false;
    const SolutionReport rep_on = solve(p, on);
    const SolutionReport rep_off = solve(p, off);
    REQUIRE(rep_on.status == SolveStatus::optimal);
    REQUIRE(rep_off.status == SolveStatus::optimal);
    ToleranceConfig tol;
    tol.epsilon = 1e-8;
    CHECK(is_optimal(kkt_residuals(p, rep_on.x, rep_on.y), tol));
    CHECK(is_optimal(kkt_residuals(p, rep_off.x, rep_off.y), tol));
    CHECK(rep_on.objective == doctest::Approx(rep_off.objective).epsilon(1e-6));
  }
}

TEST_CASE("maximization instances report the original sense") {
  const LpProblem p = parse_mps_file(testutil::fixture("lp/maxsense.mps"));
  SolverConfig cfg;
  cfg.epsilon = 1e-8;
  const SolutionReport rep = solve(p, cfg);
  CHECK(rep.status == SolveStatus::optimal);
  CHECK(rep.objective == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("solve validates inputs") {
  auto p = testutil::scalar_lp();
  p.var_lb[0] = 2.0;
  p.var_ub[0] = 1.0;
  SolverConfig cfg;
  CHECK_THROWS_AS(solve(p, cfg), InvalidProblemError);

  SolverConfig bad;
  bad.epsilon = -1.0;
  CHECK_THROWS_AS(solve(testutil::scalar_lp(), bad), UsageError);
}

TEST_CASE("sgm10 formula") {
  CHECK(sgm10(vec({0.0, 0.0}), 10.0) == doctest::Approx(0.0));
  CHECK(sgm10(vec({7.25}), 10.0) == doctest::Approx(7.25));
  CHECK(sgm10(vec({10.0, 40.0}), 10.0) == doctest::Approx(std::sqrt(1000.0) - 10.0));
  CHECK_THROWS_AS(sgm10(std::vector<double>{}, 10.0), UsageError);
  CHECK_THROWS_AS(sgm10(vec({-1.0}), 10.0), UsageError);
  // large times stay finite through the log-space evaluation
  CHECK(std::isfinite(sgm10(std::vector<double>(400, 1e300), 10.0)));
}

TEST_CASE("size classes follow the nonzero cutoffs") {
  CHECK(classify_by_nnz(5) == SizeClass::small);
  CHECK(classify_by_nnz(99'999) == SizeClass::small);
  CHECK(classify_by_nnz(1'000'000) == SizeClass::small);
  CHECK(classify_by_nnz(1'000'001) == SizeClass::medium);
  CHECK(classify_by_nnz(10'000'000) == SizeClass::medium);
  CHECK(classify_by_nnz(10'000'001) == SizeClass::large);
}

TEST_CASE("benchmark over an empty directory is a warning, not an error") {
  const auto dir = std::filesystem::temp_directory_path() / "rhpdhg_empty_bench";
  std::filesystem::create_directories(dir);
  SolverConfig cfg;
  BenchmarkOptions opts;
  std::ostringstream log;
  const BenchmarkReport rep = run_benchmark(dir.string(), cfg, opts, &log);
  CHECK(rep.records.empty());
  CHECK(log.str().find("warning") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("benchmark scores unsolved instances at the time limit") {
  const auto dir = std::filesystem::temp_directory_path() / "rhpdhg_bench_fixture";
  std::filesystem::create_directories(dir);
  std::filesystem::copy_file(testutil::fixture("lp/twovar.mps"), dir / "twovar.mps",
                             std::filesystem::copy_options::overwrite_existing);
  std::filesystem::copy_file(testutil::fixture("lp/scalar.mps"), dir / "scalar.mps",
                             std::filesystem::copy_options::overwrite_existing);
  {
    std::ofstream bad(dir / "broken.mps");
    bad << "NAME broken\nROWS\nGARBAGE\n";
  }

  SolverConfig cfg;
  cfg.epsilon = 1e-6;
  BenchmarkOptions opts;
  opts.small_limit_seconds = 30.0;
  const BenchmarkReport rep = run_benchmark(dir.string(), cfg, opts, nullptr);
  REQUIRE(rep.records.size() == 3);
  // records are name-sorted: broken, scalar, twovar
  CHECK(rep.records[0].status == "error");
  CHECK(rep.records[0].scored_seconds == 30.0);
  CHECK(rep.records[1].status == "optimal");
  CHECK(rep.records[2].status == "optimal");
  REQUIRE(rep.summary.size() == 4);
  CHECK(rep.summary[0].group == "small");
  CHECK(rep.summary[0].count == 3);
  CHECK(rep.summary[0].solved == 2);
  CHECK(rep.summary[3].group == "total");

  const std::string json_path = (dir / "report.json").string();
  write_benchmark_json(rep, cfg.epsilon, json_path);
  std::ifstream in(json_path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str().find("\"schema_version\": 1") != std::string::npos);
  CHECK(buf.str().find("\"sgm10\"") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("config files apply and reject unknown keys") {
  const auto path = std::filesystem::temp_directory_path() / "rhpdhg_test.conf";
  {
    std::ofstream out(path);
    out << "# comment line\n";
    out << "tol.epsilon 1e-6\n";
    out << "reflection.gamma = 0.5\n";
    out << "weight.initial 2.0\n";
    out << "restart.enabled off\n";
    out << "limits.iterations 500\n";
  }
  const SolverConfig cfg = SolverConfig::from_file(path.string());
  CHECK(cfg.epsilon == 1e-6);
  CHECK(cfg.reflection_gamma == 0.5);
  CHECK(cfg.initial_weight == 2.0);
  CHECK_FALSE(cfg.restarts_enabled);
  CHECK(cfg.iteration_limit == 500);

  {
    std::ofstream out(path);
    out << "no.such.key 1\n";
  }
  CHECK_THROWS_AS(SolverConfig::from_file(path.string()), UsageError);
  std::filesystem::remove(path.string().c_str());

  SolverConfig echo;
  echo.initial_weight = 2.0;
  bool found = false;
  for (const auto& [key, value] : echo.key_values())
    if (key == "weight.initial") found = value == "2";
  CHECK(found);
}

TEST_CASE("weight.initial override reaches the run report") {
  const auto p = testutil::scalar_lp();
  SolverConfig cfg;
  cfg.initial_weight = 2.0;
  cfg.epsilon = 1e-8;
  const SolutionReport rep = solve(p, cfg);
  std::ostringstream os;
  write_solution(rep, os, false);
  CHECK(os.str().find("config.weight.initial 2") != std::string::npos);
}

TEST_CASE("restarts stay off when disabled") {
  testutil::Rng rng(113);
  const auto p = testutil::random_feasible_lp(rng, 6, 8);
  SolverConfig cfg;
  cfg.restarts_enabled = false;
  cfg.epsilon = 1e-4;
  cfg.iteration_limit = 2000;
  const SolutionReport rep = solve(p, cfg);
  CHECK(rep.restart_count == 0);
  CHECK(rep.final_primal_weight == 1.0);  // nothing ever triggers the update
}
