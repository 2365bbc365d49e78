#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rhpdhg/errors.hpp"
#include "rhpdhg/lp_problem.hpp"

using namespace rhpdhg;
using testutil::kInf;
using testutil::vec;

TEST_CASE("project_box clamps componentwise") {
  CHECK(project_box(vec({2.0, -1.0}), vec({0.0, 0.0}), vec({1.0, kInf})) ==
        vec({1.0, 0.0}));
  CHECK(project_box(vec({0.5}), vec({-kInf}), vec({kInf})) == vec({0.5}));
  const auto ones = vec({1.0, 1.0, 1.0});
  CHECK(project_box(vec({3.0, -3.0, 0.0}), ones, ones) == ones);
}

TEST_CASE("project_box rejects bad input") {
  CHECK_THROWS_AS(project_box(vec({1.0}), vec({0.0, 0.0}), vec({1.0, 1.0})), UsageError);
  CHECK_THROWS_AS(project_box(vec({1.0}), vec({2.0}), vec({1.0})), InvalidProblemError);
}

TEST_CASE("project_box is idempotent and nonexpansive") {
  testutil::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform_int(0, 9));
    std::vector<double> lb(n), ub(n), v(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
      lb[i] = rng.uniform(0.0, 1.0) < 0.2 ? -kInf : rng.uniform(-5.0, 0.0);
      ub[i] = rng.uniform(0.0, 1.0) < 0.2 ? kInf : rng.uniform(0.0, 5.0);
      v[i] = rng.uniform(-10.0, 10.0);
      w[i] = rng.uniform(-10.0, 10.0);
    }
    const auto pv = project_box(v, lb, ub);
    CHECK(project_box(pv, lb, ub) == pv);  // exact idempotence

    const auto pw = project_box(w, lb, ub);
    double dp = 0.0, d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dp += (pv[i] - pw[i]) * (pv[i] - pw[i]);
      d += (v[i] - w[i]) * (v[i] - w[i]);
    }
    CHECK(std::sqrt(dp) <= std::sqrt(d) + 1e-12);
  }
}

TEST_CASE("p_support hand values") {
  // u^T y+ = 3, l^T y- = -2
  CHECK(p_support(vec({1.0, -2.0}), vec({0.0, -1.0}), vec({3.0, 5.0})) ==
        doctest::Approx(5.0));
  CHECK(p_support(vec({0.0, 0.0}), vec({-1.0, -kInf}), vec({2.0, kInf})) == 0.0);
  CHECK(p_support(vec({1.0}), vec({0.0}), vec({kInf})) == kInf);
  // the 0 * inf convention
  CHECK(p_support(vec({0.0}), vec({-kInf}), vec({kInf})) == 0.0);
  CHECK(p_support(vec({-1.0}), vec({-kInf}), vec({2.0})) == kInf);
}

TEST_CASE("p_support is positively homogeneous") {
  testutil::Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4;
    std::vector<double> y(n), lb(n), ub(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = rng.uniform(-3.0, 3.0);
      lb[i] = rng.uniform(-4.0, 0.0);
      ub[i] = rng.uniform(0.0, 4.0);
    }
    const double alpha = rng.uniform(0.0, 5.0);
    std::vector<double> ay(n);
    for (std::size_t i = 0; i < n; ++i) ay[i] = alpha * y[i];
    CHECK(p_support(ay, lb, ub) ==
          doctest::Approx(alpha * p_support(y, lb, ub)).epsilon(1e-12));
  }
}

TEST_CASE("project_dual_cone reflects the constraint box") {
  auto p1 = testutil::make_problem(1, 1, {{0, 0, 1.0}}, {0.0}, {0.0}, {kInf}, {1.0}, {kInf});
  CHECK(project_dual_cone(vec({5.0}), p1) == vec({-1.0}));

  auto p2 = testutil::make_problem(1, 1, {{0, 0, 1.0}}, {0.0}, {0.0}, {kInf}, {-kInf}, {2.0});
  CHECK(project_dual_cone(vec({-3.0}), p2) == vec({-2.0}));

  auto p3 = testutil::make_problem(1, 1, {{0, 0, 1.0}}, {0.0}, {0.0}, {kInf}, {-1.0}, {1.0});
  CHECK(project_dual_cone(vec({0.0}), p3) == vec({0.0}));
}

TEST_CASE("sparse matrix stores both layouts consistently") {
  testutil::Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Index m = rng.uniform_int(1, 12);
    const Index n = rng.uniform_int(1, 12);
    std::vector<Triplet> entries;
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < n; ++j)
        if (rng.uniform(0.0, 1.0) < 0.4) entries.push_back({i, j, rng.uniform(-2.0, 2.0)});
    const SparseMatrix a(m, n, entries);

    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = rng.uniform(-1.0, 1.0);
    const auto ax_rowmajor = a.multiply(x);

    // A*x accumulated column-by-column from the column-major layout
    std::vector<double> ax_colmajor(static_cast<std::size_t>(m), 0.0);
    const auto cptr = a.col_ptr();
    const auto ridx = a.row_index();
    const auto cval = a.csc_values();
    for (Index j = 0; j < n; ++j)
      for (Index e = cptr[j]; e < cptr[j + 1]; ++e)
        ax_colmajor[ridx[e]] += cval[e] * x[j];

    for (Index i = 0; i < m; ++i)
      CHECK(ax_rowmajor[i] == doctest::Approx(ax_colmajor[i]).epsilon(1e-12));
  }
}

TEST_CASE("sparse matrix construction validates") {
  CHECK_THROWS_AS(SparseMatrix(2, 2, {{0, 0, 1.0}, {0, 0, 2.0}}), InvalidProblemError);
  CHECK_THROWS_AS(SparseMatrix(2, 2, {{2, 0, 1.0}}), UsageError);
  CHECK_THROWS_AS(SparseMatrix(1, 1, {{0, 0, std::nan("")}}), InvalidProblemError);
  // explicit zeros are dropped
  const SparseMatrix a(2, 2, {{0, 0, 0.0}, {1, 1, 3.0}});
  CHECK(a.nnz() == 1);
  // empty matrix is permitted
  const SparseMatrix e(0, 0, {});
  CHECK(e.nnz() == 0);
}

TEST_CASE("LpProblem validation catches model violations") {
  auto good = testutil::scalar_lp();
  CHECK_NOTHROW(good.validate());

  auto crossed = good;
  crossed.var_lb[0] = 2.0;
  crossed.var_ub[0] = 1.0;
  CHECK_THROWS_AS(crossed.validate(), InvalidProblemError);

  auto nan_obj = good;
  nan_obj.objective[0] = std::nan("");
  CHECK_THROWS_AS(nan_obj.validate(), InvalidProblemError);

  auto inf_obj = good;
  inf_obj.objective[0] = kInf;
  CHECK_THROWS_AS(inf_obj.validate(), InvalidProblemError);

  auto short_bounds = good;
  short_bounds.var_lb.clear();
  CHECK_THROWS_AS(short_bounds.validate(), InvalidProblemError);
}

TEST_CASE("iterate caches verify against recomputation") {
  testutil::Rng rng(17);
  const auto p = testutil::random_feasible_lp(rng, 6, 9);
  const auto z = testutil::random_iterate(rng, p, 2.0);
  const auto ax = p.matrix.multiply(z.x);
  const auto aty = p.matrix.multiply_transpose(z.y);
  for (std::size_t i = 0; i < ax.size(); ++i) CHECK(z.ax[i] == ax[i]);
  for (std::size_t j = 0; j < aty.size(); ++j) CHECK(z.aty[j] == aty[j]);

  const auto zero = Iterate::zeros(p);
  CHECK(zero.ax_valid);
  CHECK(zero.aty_valid);
  for (double v : zero.ax) CHECK(v == 0.0);
}
