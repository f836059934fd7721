#include "doctest.h"
#include "ian/gabriel.hpp"
#include "ian/point_cloud.hpp"
#include "ian/rng.hpp"

using namespace ian;

namespace {

// Brute-force reference: edge (i, j) iff no k has midpoint distance within
// the closed ball, using the same Apollonius form and tolerance as the
// library predicate.
NeighborGraph brute_gabriel(const DistanceMatrix& d, Scalar tol = 1e-12) {
  const Index n = d.size();
  NeighborGraph g(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const Scalar rij2 = d(i, j) * d(i, j);
      bool blocked = false;
      for (Index k = 0; k < n && !blocked; ++k) {
        if (k == i || k == j) continue;
        const Scalar m2 =
            (2 * d(i, k) * d(i, k) + 2 * d(j, k) * d(j, k) - rij2) / 4;
        blocked = m2 <= (rij2 / 4) * (1 + tol) * (1 + tol);
      }
      if (!blocked) g.add_edge(i, j);
    }
  return g;
}

Matrix random_cloud(Index n, Index dim, Rng& rng) {
  Matrix pts(n, dim);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < dim; ++j) pts(i, j) = rng.uniform(-1, 1);
  return pts;
}

}  // namespace

TEST_CASE("matches brute force on random clouds") {
  Rng rng(77);
  for (int trial = 0; trial < 12; ++trial) {
    Index n = 10 + static_cast<Index>(rng.below(60));
    Index dim = 1 + static_cast<Index>(rng.below(4));
    DistanceMatrix d = pairwise_distances(random_cloud(n, dim, rng));
    NeighborGraph fast = gabriel_graph(d);
    NeighborGraph slow = brute_gabriel(d);
    CHECK(fast.edges() == slow.edges());
  }
}

TEST_CASE("line, square grid, triangular grid interior degrees") {
  DatasetSpec line;
  line.kind = DatasetKind::grid;
  line.params = {{"dim", 1}, {"n", 30}};
  PointCloud pl = generate(line, 0);
  NeighborGraph gl = gabriel_graph(pairwise_distances(pl.points));
  for (Index i = 0; i < pl.size(); ++i)
    if (pl.labels[i] == "interior") CHECK(gl.degree(i) == 2);

  DatasetSpec sq;
  sq.kind = DatasetKind::grid;
  sq.params = {{"dim", 2}, {"side", 9}};
  PointCloud ps = generate(sq, 0);
  NeighborGraph gs = gabriel_graph(pairwise_distances(ps.points));
  for (Index i = 0; i < ps.size(); ++i)
    if (ps.labels[i] == "interior") CHECK(gs.degree(i) == 4);

  DatasetSpec tri;
  tri.kind = DatasetKind::grid;
  tri.params = {{"dim", 2}, {"side", 9}, {"lattice", 1}};
  PointCloud pt = generate(tri, 0);
  NeighborGraph gt = gabriel_graph(pairwise_distances(pt.points));
  for (Index i = 0; i < pt.size(); ++i)
    if (pt.labels[i] == "interior") CHECK(gt.degree(i) == 6);
}

TEST_CASE("boundary points on the diameter ball block the edge") {
  // equilateral right setup: 2 at the exact midpoint circle of 0-1
  Matrix pts(3, 2);
  pts << 0, 0, 2, 0, 1, 1;  // |01| = 2, point 2 at distance 1 from midpoint
  DistanceMatrix d = pairwise_distances(pts);
  CHECK_FALSE(is_gabriel_edge(d, 0, 1));
  CHECK(is_gabriel_edge(d, 0, 2));
  CHECK(is_gabriel_edge(d, 1, 2));
}

TEST_CASE("acute triangle counter flags right angles") {
  Matrix pts(3, 2);
  pts << 0, 0, 3, 0, 0, 4;  // 3-4-5 right triangle
  DistanceMatrix d = pairwise_distances(pts);
  NeighborGraph clique(3, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(acute_triangle_violations(d, clique) == 1);
  NeighborGraph gabriel = gabriel_graph(d);
  CHECK(acute_triangle_violations(d, gabriel) == 0);
}

TEST_CASE("gabriel outputs never contain non-acute triangles") {
  Rng rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    DistanceMatrix d =
        pairwise_distances(random_cloud(50, 1 + static_cast<Index>(rng.below(3)), rng));
    CHECK(acute_triangle_violations(d, gabriel_graph(d)) == 0);
  }
}

TEST_CASE("chain structure in one dimension") {
  Matrix pts(6, 1);
  pts << 0.0, 0.4, 1.1, 2.0, 3.7, 4.0;
  NeighborGraph g = gabriel_graph(pairwise_distances(pts));
  CHECK(g.edge_count() == 5);
  for (Index i = 0; i + 1 < 6; ++i) CHECK(g.has_edge(i, i + 1));
}
