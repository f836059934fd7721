#include <Eigen/LU>

#include <functional>
#include <vector>

#include "doctest.h"
#include "ian/rng.hpp"
#include "ian/simplex.hpp"

using namespace ian;

namespace {

Matrix dense_rows(const InequalityLP& lp) {
  Matrix a = Matrix::Zero(static_cast<Index>(lp.rows.size()), lp.num_vars);
  for (std::size_t r = 0; r < lp.rows.size(); ++r)
    for (const auto& [col, coef] : lp.rows[r]) a(static_cast<Index>(r), col) += coef;
  return a;
}

bool feasible(const InequalityLP& lp, const Matrix& a, const Vector& x, Scalar tol) {
  for (Index i = 0; i < lp.num_vars; ++i)
    if (x[i] < -tol || x[i] > lp.upper[i] + tol) return false;
  Vector ax = a * x;
  for (Index r = 0; r < ax.size(); ++r)
    if (ax[r] < lp.rhs[r] - tol) return false;
  return true;
}

// Exhaustive vertex enumeration: optima of an LP over a bounded polyhedron
// sit at intersections of num_vars constraints chosen among the rows and the
// box faces. Only viable for tiny programs.
Scalar enumerate_optimum(const InequalityLP& lp) {
  const Index n = lp.num_vars;
  const Matrix a = dense_rows(lp);
  const Index m = a.rows();
  const Index total = m + 2 * n;  // rows, lower faces, upper faces
  std::vector<Index> pick(n);
  Scalar best = std::numeric_limits<Scalar>::infinity();

  std::vector<Index> stack;
  auto consider = [&](const std::vector<Index>& sel) {
    Matrix sys(n, n);
    Vector rhs(n);
    for (Index k = 0; k < n; ++k) {
      Index c = sel[k];
      if (c < m) {
        sys.row(k) = a.row(c);
        rhs[k] = lp.rhs[c];
      } else if (c < m + n) {
        sys.row(k).setZero();
        sys(k, c - m) = 1;
        rhs[k] = 0;
      } else {
        sys.row(k).setZero();
        sys(k, c - m - n) = 1;
        rhs[k] = lp.upper[c - m - n];
      }
    }
    Eigen::FullPivLU<Matrix> lu(sys);
    if (!lu.isInvertible()) return;
    Vector x = lu.solve(rhs);
    if (feasible(lp, a, x, 1e-9)) best = std::min(best, lp.cost.dot(x));
  };

  // choose n of total constraints
  std::vector<Index> sel(n);
  std::function<void(Index, Index)> rec = [&](Index start, Index depth) {
    if (depth == n) {
      consider(sel);
      return;
    }
    for (Index c = start; c < total; ++c) {
      sel[depth] = c;
      rec(c + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

InequalityLP random_lp(Rng& rng, Index n, Index m) {
  InequalityLP lp;
  lp.num_vars = n;
  lp.upper = Vector(n);
  lp.cost = Vector(n);
  for (Index i = 0; i < n; ++i) {
    lp.upper[i] = 0.5 + rng.uniform01() * 2;
    lp.cost[i] = 0.1 + rng.uniform01();
  }
  lp.rhs = Vector(m);
  lp.rows.resize(m);
  for (Index r = 0; r < m; ++r) {
    // two-variable rows with nonnegative coefficients, like covering rows
    Index i = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
    Index j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
    if (j == i) j = (i + 1) % n;
    Scalar ci = 0.2 + rng.uniform01(), cj = 0.2 + rng.uniform01();
    lp.rows[r] = {{i, ci}, {j, cj}};
    // keep x = upper feasible: rhs at most the value there
    Scalar at_upper = ci * lp.upper[i] + cj * lp.upper[j];
    lp.rhs[r] = at_upper * (0.3 + 0.6 * rng.uniform01());
  }
  return lp;
}

}  // namespace

TEST_CASE("matches exhaustive vertex enumeration on tiny programs") {
  Rng rng(202);
  for (int trial = 0; trial < 40; ++trial) {
    Index n = 2 + static_cast<Index>(rng.below(4));       // 2..5 vars
    Index m = 1 + static_cast<Index>(rng.below(6));       // 1..6 rows
    InequalityLP lp = random_lp(rng, n, m);
    SimplexResult res = solve_inequality_lp(lp);
    Matrix a = dense_rows(lp);
    CHECK(feasible(lp, a, res.x, 1e-8));
    Scalar oracle = enumerate_optimum(lp);
    CHECK(res.objective == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(res.objective == doctest::Approx(lp.cost.dot(res.x)).epsilon(1e-12));
  }
}

TEST_CASE("unconstrained program sits at the lower box corner") {
  InequalityLP lp;
  lp.num_vars = 3;
  lp.upper = Vector::Constant(3, 2.0);
  lp.cost = Vector::Constant(3, 1.0);
  SimplexResult res = solve_inequality_lp(lp);
  CHECK(res.objective == doctest::Approx(0.0));
  CHECK(res.x.norm() == doctest::Approx(0.0));
}

TEST_CASE("active constraint pins the solution") {
  // min x0 + x1 s.t. x0 + x1 >= 1.5, 0 <= x <= 1
  InequalityLP lp;
  lp.num_vars = 2;
  lp.upper = Vector::Constant(2, 1.0);
  lp.cost = Vector::Constant(2, 1.0);
  lp.rows = {{{0, 1.0}, {1, 1.0}}};
  lp.rhs = Vector::Constant(1, 1.5);
  SimplexResult res = solve_inequality_lp(lp);
  CHECK(res.objective == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("infeasible start is reported") {
  // row requires x0 >= 3 but upper bound is 1
  InequalityLP lp;
  lp.num_vars = 1;
  lp.upper = Vector::Constant(1, 1.0);
  lp.cost = Vector::Constant(1, 1.0);
  lp.rows = {{{0, 1.0}}};
  lp.rhs = Vector::Constant(1, 3.0);
  CHECK_THROWS_AS(solve_inequality_lp(lp), std::runtime_error);
}

TEST_CASE("deterministic across repeated solves") {
  Rng rng(7);
  InequalityLP lp = random_lp(rng, 5, 6);
  SimplexResult a = solve_inequality_lp(lp);
  SimplexResult b = solve_inequality_lp(lp);
  CHECK(a.x == b.x);
  CHECK(a.iterations == b.iterations);
}
