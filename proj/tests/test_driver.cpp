#include <cmath>

#include "doctest.h"
#include "ian/gabriel.hpp"
#include "ian/ian_driver.hpp"
#include "ian/point_cloud.hpp"
#include "ian/rng.hpp"

using namespace ian;

namespace {

DistanceMatrix chain_023() {
  Matrix pts(3, 1);
  pts << 0, 1, 3;
  return pairwise_distances(pts);
}

Matrix uniform_square(Index n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix pts(n, 2);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < 2; ++j) pts(i, j) = rng.uniform(0, 1);
  return pts;
}

// two 5x5 unit grids, right edge of one facing the left edge of the other
Matrix dumbbell() {
  Matrix pts(50, 2);
  Index r = 0;
  for (Index gx : {0, 12})
    for (Index x = 0; x < 5; ++x)
      for (Index y = 0; y < 5; ++y) {
        pts(r, 0) = static_cast<Scalar>(gx + x);
        pts(r, 1) = static_cast<Scalar>(y);
        ++r;
      }
  return pts;
}

}  // namespace

TEST_CASE("prune step removes each outlier's farthest edge in visit order") {
  DistanceMatrix d = chain_023();

  NeighborGraph g(3, {{0, 1}, {1, 2}});
  auto removed = prune_step(g, d, {1}, PrunePolicy::one_edge_per_outlier, false);
  REQUIRE(removed.size() == 1);
  CHECK(removed[0] == IndexPair{1, 2});
  CHECK(g.has_edge(0, 1));
  CHECK_FALSE(g.has_edge(1, 2));

  // second outlier sees the already-updated graph
  NeighborGraph g2(3, {{0, 1}, {1, 2}});
  auto removed2 = prune_step(g2, d, {1, 0}, PrunePolicy::one_edge_per_outlier, false);
  REQUIRE(removed2.size() == 2);
  CHECK(removed2[0] == IndexPair{1, 2});
  CHECK(removed2[1] == IndexPair{0, 1});
  CHECK(g2.edge_count() == 0);

  // a node already isolated by an earlier removal proposes nothing
  NeighborGraph g3(3, {{0, 1}});
  auto removed3 = prune_step(g3, d, {0, 1}, PrunePolicy::one_edge_per_outlier, false);
  REQUIRE(removed3.size() == 1);
  CHECK(removed3[0] == IndexPair{0, 1});
}

TEST_CASE("prune step honors the single-global-edge policy") {
  DistanceMatrix d = chain_023();
  NeighborGraph g(3, {{0, 1}, {1, 2}});
  auto removed = prune_step(g, d, {1, 0}, PrunePolicy::single_global_edge, false);
  REQUIRE(removed.size() == 1);
  CHECK(removed[0] == IndexPair{1, 2});
  CHECK(g.edge_count() == 1);
}

TEST_CASE("prune step skips bridge removals when keeping connectivity") {
  DistanceMatrix d = chain_023();
  NeighborGraph g(3, {{0, 1}, {1, 2}});  // every edge is a bridge
  auto removed = prune_step(g, d, {1, 0, 2}, PrunePolicy::one_edge_per_outlier, true);
  CHECK(removed.empty());
  CHECK(g.edge_count() == 2);
}

TEST_CASE("prune step breaks distance ties toward the smaller neighbor index") {
  Matrix pts(3, 1);
  pts << -1, 0, 1;  // node 1 is equidistant from 0 and 2
  DistanceMatrix d = pairwise_distances(pts);
  NeighborGraph g(3, {{0, 1}, {1, 2}});
  auto removed = prune_step(g, d, {1}, PrunePolicy::one_edge_per_outlier, false);
  REQUIRE(removed.size() == 1);
  CHECK(removed[0] == IndexPair{0, 1});
}

TEST_CASE("convergence check compares valid statistics against the threshold") {
  VolumeRatioStats st;
  st.delta_prime = Vector(3);
  st.delta_prime << 0.5, 2.0, std::numeric_limits<Scalar>::quiet_NaN();
  st.delta_prime_ms = Vector(3);
  st.delta_prime_ms << 0.5, 1.0, std::numeric_limits<Scalar>::quiet_NaN();
  st.valid = {1, 1, 0};
  OutlierThreshold th;
  th.threshold = 1.5;
  CHECK_FALSE(check_convergence(st, ConvergenceStat::delta_prime, th));
  CHECK(check_convergence(st, ConvergenceStat::delta_prime_ms, th));
  th.threshold = 2.5;
  CHECK(check_convergence(st, ConvergenceStat::delta_prime, th));
}

TEST_CASE("driver rejects degenerate inputs") {
  Matrix one(1, 2);
  one << 0, 0;
  CHECK_THROWS_AS(run_ian(pairwise_distances(one)), std::invalid_argument);
}

TEST_CASE("driver invariants hold across a mixed bag of small datasets") {
  std::vector<DistanceMatrix> inputs;
  for (std::uint64_t s : {101, 102, 103})
    inputs.push_back(pairwise_distances(uniform_square(40 + 17 * static_cast<Index>(s % 7), s)));
  for (int dim : {2, 3}) {
    DatasetSpec spec;
    spec.kind = DatasetKind::ball;
    spec.params["dim"] = dim;
    spec.params["n"] = 70;
    inputs.push_back(pairwise_distances(generate(spec, 200 + dim).points));
  }
  {
    DatasetSpec spec;
    spec.kind = DatasetKind::jittered_grid;
    spec.params["dim"] = 2;
    spec.params["side"] = 8;
    inputs.push_back(pairwise_distances(generate(spec, 7).points));
  }
  {
    DatasetSpec spec;
    spec.kind = DatasetKind::gauss_clusters;
    spec.params["n"] = 60;
    spec.params["k"] = 2;
    inputs.push_back(pairwise_distances(generate(spec, 5).points));
  }

  IANConfig cfg;
  cfg.auto_tune = false;
  cfg.c = 0.95;

  for (const DistanceMatrix& d : inputs) {
    NeighborGraph g0 = gabriel_graph(d);
    const Index e0 = g0.edge_count();
    IANResult r = run_ian(d, cfg);

    CHECK(r.iterations == static_cast<long>(r.history.size()));
    CHECK(r.iterations <= static_cast<long>(e0));
    CHECK(r.history.front().edges == e0);
    // edge counts decrease by exactly the recorded removals
    for (std::size_t k = 0; k + 1 < r.history.size(); ++k) {
      CHECK(r.history[k + 1].edges ==
            r.history[k].edges - static_cast<Index>(r.history[k].pruned.size()));
      CHECK(!r.history[k].pruned.empty());
    }
    CHECK(r.g_star.edge_count() ==
          e0 - static_cast<Index>(r.pruned_edges.size()));
    // pruning only removes: every surviving edge already existed
    for (const IndexPair& e : r.g_star.edges()) CHECK(g0.has_edge(e.first, e.second));
    CHECK(r.converged == (r.stop_reason == StopReason::no_outliers));
    CHECK(r.c_star == 0.95);
    REQUIRE(r.sigma.size() == d.size());
    for (Index i = 0; i < d.size(); ++i)
      if (r.g_star.degree(i) > 0) CHECK(r.sigma[i] > 0);
    CHECK(verify_covering(d, r.g_star, r.sigma, r.c_star));
    CHECK(r.gw_star.size() == d.size());

    // byte-identical replay
    IANResult r2 = run_ian(d, cfg);
    CHECK(r2.g_star.edges() == r.g_star.edges());
    CHECK(r2.pruned_edges == r.pruned_edges);
    CHECK(r2.iterations == r.iterations);
    for (Index i = 0; i < d.size(); ++i) CHECK(r2.sigma[i] == r.sigma[i]);
  }
}

TEST_CASE("auto-tuned run records the sweep and converges on a uniform square") {
  DistanceMatrix d = pairwise_distances(uniform_square(60, 7));
  IANResult r = run_ian(d);
  REQUIRE(!r.history.empty());
  CHECK(r.history.front().tuned);
  CHECK(r.c_star >= 0.30);
  CHECK(r.c_star <= 1.00);
  CHECK(r.stop_reason != StopReason::max_iterations);
  // every surviving node got a positive bandwidth and the covering holds
  CHECK(verify_covering(d, r.g_star, r.sigma, r.c_star));
}

TEST_CASE("iteration cap stops the loop without pruning past it") {
  DistanceMatrix d = pairwise_distances(uniform_square(80, 5));
  IANConfig base;
  base.auto_tune = false;
  base.c = 0.95;
  IANResult full = run_ian(d, base);
  REQUIRE(full.history.front().outliers > 0);  // seed chosen so pruning happens

  IANConfig capped = base;
  capped.max_iterations = 0;
  IANResult r = run_ian(d, capped);
  CHECK(r.iterations == 1);
  CHECK_FALSE(r.converged);
  CHECK(r.stop_reason == StopReason::max_iterations);
  CHECK(r.pruned_edges.empty());
  CHECK(r.g_star.edge_count() == gabriel_graph(d).edge_count());
}

TEST_CASE("keeping connectivity leaves the dumbbell in one piece") {
  DistanceMatrix d = pairwise_distances(dumbbell());
  IANConfig cfg;
  cfg.auto_tune = false;
  cfg.c = 0.95;

  IANResult split = run_ian(d, cfg);
  CHECK(split.g_star.component_count() >= 2);

  cfg.keep_connected = true;
  IANResult joined = run_ian(d, cfg);
  CHECK(joined.g_star.component_count() == 1);
}

TEST_CASE("greedy scale method matches the automatic path below the threshold") {
  DistanceMatrix d = pairwise_distances(uniform_square(50, 9));
  IANConfig a;
  a.auto_tune = false;
  a.c = 0.9;
  a.scale_method = ScaleMethod::greedy;
  IANResult ga = run_ian(d, a);

  IANConfig b = a;
  b.scale_method = ScaleMethod::automatic;
  b.greedy_edge_threshold = 0;  // forces the greedy branch
  IANResult gb = run_ian(d, b);

  CHECK(ga.g_star.edges() == gb.g_star.edges());
  for (Index i = 0; i < d.size(); ++i) CHECK(ga.sigma[i] == gb.sigma[i]);
  CHECK(verify_covering(d, ga.g_star, ga.sigma, a.c));
}

TEST_CASE("multiscale convergence statistic drives the loop when selected") {
  DistanceMatrix d = pairwise_distances(uniform_square(45, 13));
  IANConfig cfg;
  cfg.auto_tune = false;
  cfg.c = 0.95;
  cfg.stat = ConvergenceStat::delta_prime_ms;
  IANResult r = run_ian(d, cfg);
  CHECK(r.stop_reason != StopReason::max_iterations);
  // the recorded median tracks the multiscale statistic
  std::vector<Scalar> ms = r.stats.valid_values(true);
  CHECK(r.history.back().median_stat == doctest::Approx(quantile(ms, 0.5)).epsilon(1e-12));
}
