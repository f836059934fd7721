#include <cmath>
#include <limits>

#include "doctest.h"
#include "ian/embedding.hpp"
#include "ian/gabriel.hpp"
#include "ian/geodesics.hpp"
#include "ian/rng.hpp"

using namespace ian;

namespace {

constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();

// full relaxation sweep repeated n times: slow but obviously correct
Vector relaxation_oracle(const NeighborGraph& g, const DistanceMatrix& d, Index source) {
  const Index n = g.size();
  Vector dist = Vector::Constant(n, kInf);
  dist[source] = 0;
  const auto edges = g.edges();
  for (Index pass = 0; pass < n; ++pass)
    for (const auto& [i, j] : edges) {
      if (dist[i] + d(i, j) < dist[j]) dist[j] = dist[i] + d(i, j);
      if (dist[j] + d(i, j) < dist[i]) dist[i] = dist[j] + d(i, j);
    }
  return dist;
}

}  // namespace

TEST_CASE("shortest paths on a three-node chain") {
  Matrix pts(3, 1);
  pts << 0, 1, 3;
  DistanceMatrix d = pairwise_distances(pts);
  NeighborGraph g(3, {{0, 1}, {1, 2}});
  Vector from0 = graph_geodesics(g, d, 0);
  CHECK(from0[0] == 0);
  CHECK(from0[1] == 1);
  CHECK(from0[2] == 3);

  Matrix all = all_pairs_geodesics(g, d);
  CHECK(all.diagonal().isZero(0));
  CHECK((all - all.transpose()).isZero(0));
  for (Index s = 0; s < 3; ++s)
    CHECK((all.row(s).transpose() - graph_geodesics(g, d, s)).isZero(0));

  CHECK_THROWS_AS(graph_geodesics(g, d, 5), std::invalid_argument);
  CHECK_THROWS_AS(graph_geodesics(g, d, -1), std::invalid_argument);
}

TEST_CASE("shortest paths agree with a relaxation oracle on random graphs") {
  Rng rng(71);
  for (int rep = 0; rep < 8; ++rep) {
    const Index n = 30 + 10 * (rep % 4);
    Matrix pts(n, 2 + rep % 2);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < pts.cols(); ++j) pts(i, j) = rng.uniform(0, 1);
    DistanceMatrix d = pairwise_distances(pts);
    NeighborGraph g = gabriel_graph(d);
    // sever one node entirely so unreachable handling is exercised
    for (Index nb : g.neighbors(n - 1)) g.remove_edge(n - 1, nb);
    for (Index s : {Index(0), n / 2}) {
      Vector got = graph_geodesics(g, d, s);
      Vector want = relaxation_oracle(g, d, s);
      for (Index i = 0; i < n; ++i) {
        if (std::isinf(want[i]))
          CHECK(std::isinf(got[i]));
        else
          CHECK(got[i] == want[i]);
      }
      CHECK(std::isinf(got[n - 1]));
    }
  }
}

TEST_CASE("explicit edge lengths override the metric") {
  Matrix pts(3, 1);
  pts << 0, 1, 3;
  DistanceMatrix d = pairwise_distances(pts);
  NeighborGraph g(3, {{0, 1}, {1, 2}});
  Vector from0 = graph_geodesics_weighted(g, {5.0, 7.0}, 0);
  CHECK(from0[1] == 5);
  CHECK(from0[2] == 12);
  CHECK_THROWS_AS(graph_geodesics_weighted(g, {5.0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(graph_geodesics_weighted(g, {5.0, -1.0}, 0), std::invalid_argument);
}

TEST_CASE("chained chords track arc length on a quarter circle") {
  const Index n = 40;
  Matrix pts(n, 2);
  for (Index i = 0; i < n; ++i) {
    const Scalar th = 0.5 * M_PI * static_cast<Scalar>(i) / static_cast<Scalar>(n - 1);
    pts(i, 0) = std::cos(th);
    pts(i, 1) = std::sin(th);
  }
  DistanceMatrix d = pairwise_distances(pts);
  NeighborGraph g = gabriel_graph(d);
  Vector dist = graph_geodesics(g, d, 0);
  Scalar worst = 0;
  for (Index i = 1; i < n; ++i) {
    const Scalar arc = 0.5 * M_PI * static_cast<Scalar>(i) / static_cast<Scalar>(n - 1);
    worst = std::max(worst, std::abs(dist[i] - arc) / arc);
  }
  CHECK(worst < 0.005);
}

TEST_CASE("medoid minimizes total distance with ties to the lower index") {
  Matrix pts(4, 1);
  pts << 0, 1, 2, 10;
  CHECK(medoid(pairwise_distances(pts)) == 1);
  Matrix sym(3, 1);
  sym << 0, 1, 2;
  CHECK(medoid(pairwise_distances(sym)) == 1);
}

TEST_CASE("graph laplacian has zero row sums and the right quadratic form") {
  WeightedGraph gw;
  gw.n = 3;
  gw.adj = {{{1, 0.5}, {2, 2.0}}, {{0, 0.5}}, {{0, 2.0}}};
  SparseMatrix L = graph_laplacian(gw);
  Matrix Ld = Matrix(L);
  CHECK(Ld(0, 0) == 2.5);
  CHECK(Ld(0, 1) == -0.5);
  CHECK(Ld(0, 2) == -2.0);
  CHECK((Ld * Vector::Ones(3)).isZero(1e-15));
  CHECK((Ld - Ld.transpose()).isZero(0));
  Vector x(3);
  x << 1, 0, 0;
  // x^T L x = sum_edges w (x_i - x_j)^2
  CHECK(x.dot(Ld * x) == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("heat distance on a single edge is the inverse root weight") {
  WeightedGraph gw;
  gw.n = 2;
  gw.adj = {{{1, 0.5}}, {{0, 0.5}}};
  Vector phi = heat_geodesics(gw, 0, 1.0);
  CHECK(phi[0] == 0);
  CHECK(phi[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  // from the other end the roles swap
  Vector rev = heat_geodesics(gw, 1, 1.0);
  CHECK(rev[1] == 0);
  CHECK(rev[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK_THROWS_AS(heat_geodesics(gw, 0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(heat_geodesics(gw, 2, 1.0), std::invalid_argument);
}

TEST_CASE("heat distances order a grid like true geodesics") {
  const Index side = 6;
  Matrix pts(side * side, 2);
  for (Index x = 0; x < side; ++x)
    for (Index y = 0; y < side; ++y) {
      pts(x * side + y, 0) = static_cast<Scalar>(x);
      pts(x * side + y, 1) = static_cast<Scalar>(y);
    }
  DistanceMatrix d = pairwise_distances(pts);
  NeighborGraph g = gabriel_graph(d);
  Vector sigma = Vector::Constant(side * side, 1.0);
  WeightedGraph gw = multiscale_kernel(d, sigma);

  const Index src = 0;
  Vector phi = heat_geodesics(gw, src, 1.0);
  Vector ref = graph_geodesics(g, d, src);
  CHECK(phi[src] == 0);
  for (Index i = 1; i < phi.size(); ++i) CHECK(phi[i] > 0);
  CHECK(kendall_tau(phi, ref) > 0.9);
}

TEST_CASE("heat diffusion marks other components unreachable") {
  Matrix pts(4, 1);
  pts << 0, 1, 100, 101;
  DistanceMatrix d = pairwise_distances(pts);
  Vector sigma = Vector::Constant(4, 1.0);
  WeightedGraph gw = multiscale_kernel(d, sigma, 1e-3);
  REQUIRE(gw.component_count() == 2);
  Vector phi = heat_geodesics(gw, 0, 1.0);
  CHECK(phi[0] == 0);
  CHECK(std::isfinite(phi[1]));
  CHECK(std::isinf(phi[2]));
  CHECK(std::isinf(phi[3]));
}
