#pragma once

#include <vector>

#include "ian/distance_matrix.hpp"
#include "ian/kernel_stats.hpp"
#include "ian/neighbor_graph.hpp"
#include "ian/scale_opt.hpp"
#include "ian/types.hpp"

namespace ian {

enum class PrunePolicy {
  one_edge_per_outlier,  // every outlier proposes its farthest edge
  single_global_edge,    // only the strongest outlier loses an edge
};

enum class ConvergenceStat { delta_prime, delta_prime_ms };

enum class ScaleMethod {
  automatic,  // LP up to greedy_edge_threshold edges, greedy beyond
  lp,
  greedy,
};

struct IANConfig {
  bool auto_tune = true;
  Scalar c = 0.95;                   // fixed bandwidth factor when !auto_tune
  std::vector<Scalar> c_grid;        // empty: default_c_grid()
  Scalar retune_gap = 0.1;           // re-tune when |median - 1| exceeds this
  Scalar outlier_multiplier = 4.5;
  PrunePolicy policy = PrunePolicy::one_edge_per_outlier;
  ConvergenceStat stat = ConvergenceStat::delta_prime;
  bool keep_connected = false;       // skip removals that would disconnect
  long max_iterations = -1;          // -1: initial edge count
  ScaleMethod scale_method = ScaleMethod::automatic;
  Index greedy_edge_threshold = 20000;
  Scalar kernel_cutoff = 1e-16;
  Scalar gabriel_tol = 1e-12;
  CoveringOptions covering;
  SimplexOptions simplex;
  bool build_weighted_output = true;  // skip for very large runs
};

struct IterationRecord {
  long iteration = 0;
  Index edges = 0;                  // before this iteration's pruning
  Scalar c = 1;
  bool tuned = false;
  Scalar median_stat = 0;           // median of the convergence statistic
  Scalar threshold = 0;
  Index outliers = 0;
  std::vector<IndexPair> pruned;    // removed this iteration, in order
};

enum class StopReason { no_outliers, no_prunable_edges, max_iterations };

struct IANResult {
  NeighborGraph g_star;
  WeightedGraph gw_star;            // empty when build_weighted_output is off
  Vector sigma;
  Scalar c_star = 1;
  VolumeRatioStats stats;
  OutlierThreshold threshold;
  bool converged = false;
  StopReason stop_reason = StopReason::no_outliers;
  long iterations = 0;
  std::vector<IterationRecord> history;
  std::vector<IndexPair> pruned_edges;  // all removals, in removal order
};

// The full iterated pipeline: start from the Gabriel graph, then repeat
// (scales -> kernel statistics -> outlier pruning) until no statistic
// exceeds the quartile threshold. Deterministic for fixed inputs.
IANResult run_ian(const DistanceMatrix& d, const IANConfig& cfg = {});

// One pruning pass over the given statistics. Outliers are visited in
// decreasing statistic order (ties toward the lower node index); each visit
// proposes the node's farthest current edge, deduplicated across outliers.
// With keep_connected, removals that would disconnect are skipped. Mutates g
// and returns the removed edges in order.
std::vector<IndexPair> prune_step(NeighborGraph& g, const DistanceMatrix& d,
                                  const std::vector<Index>& outliers_desc,
                                  PrunePolicy policy, bool keep_connected);

// True when no valid node's statistic exceeds the threshold.
bool check_convergence(const VolumeRatioStats& stats, ConvergenceStat stat,
                       const OutlierThreshold& threshold);

}  // namespace ian
