#include "ian/ian_driver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ian/gabriel.hpp"

namespace ian {

std::vector<IndexPair> prune_step(NeighborGraph& g, const DistanceMatrix& d,
                                  const std::vector<Index>& outliers_desc, PrunePolicy policy,
                                  bool keep_connected) {
  std::vector<IndexPair> removed;
  for (Index idx : outliers_desc) {
    if (g.degree(idx) == 0) continue;
    // Farthest surviving neighbor; neighbors are scanned in ascending index
    // order and only a strictly larger distance replaces, so distance ties
    // resolve toward the smaller index.
    Index far = -1;
    Scalar best = -1;
    for (Index nb : g.neighbors(idx))
      if (d(idx, nb) > best) {
        best = d(idx, nb);
        far = nb;
      }
    const Index a = std::min(idx, far), b = std::max(idx, far);
    if (keep_connected && g.is_bridge(a, b)) continue;
    g.remove_edge(a, b);
    removed.emplace_back(a, b);
    if (policy == PrunePolicy::single_global_edge) break;
  }
  return removed;
}

bool check_convergence(const VolumeRatioStats& stats, ConvergenceStat stat,
                       const OutlierThreshold& threshold) {
  const Vector& v =
      stat == ConvergenceStat::delta_prime_ms ? stats.delta_prime_ms : stats.delta_prime;
  for (Index i = 0; i < v.size(); ++i)
    if (stats.valid[static_cast<std::size_t>(i)] && v[i] > threshold.threshold) return false;
  return true;
}

IANResult run_ian(const DistanceMatrix& d, const IANConfig& cfg) {
  const Index n = d.size();
  if (n < 2) throw std::invalid_argument("need at least two points");

  NeighborGraph g = gabriel_graph(d, cfg.gabriel_tol);
  const long max_iter =
      cfg.max_iterations >= 0 ? cfg.max_iterations : static_cast<long>(g.edge_count());

  IANResult res;
  Scalar c_cur = cfg.c;
  bool have_c = !cfg.auto_tune;
  ScaleVector scales;
  VolumeRatioStats stats;

  auto lp_scales_now = [&]() {
    switch (cfg.scale_method) {
      case ScaleMethod::lp: return true;
      case ScaleMethod::greedy: return false;
      case ScaleMethod::automatic: break;
    }
    return g.edge_count() <= cfg.greedy_edge_threshold;
  };
  auto tune_options = [&](bool lp) {
    TuneOptions topt;
    topt.grid = cfg.c_grid;
    topt.covering = cfg.covering;
    topt.simplex = cfg.simplex;
    topt.cutoff = cfg.kernel_cutoff;
    topt.use_greedy = !lp;
    return topt;
  };

  long it = 0;
  for (;;) {
    ++it;
    const bool lp = lp_scales_now();
    bool tuned = false;
    if (!have_c) {
      const TuneResult t = tune_c(d, g, tune_options(lp));
      c_cur = t.c_star;
      scales = t.scales;
      stats = t.stats;
      have_c = true;
      tuned = true;
    } else {
      scales = lp ? solve_scales(build_constraints(d, g, c_cur, cfg.covering), cfg.simplex)
                  : greedy_scales(d, g, c_cur, cfg.covering);
      stats = volume_ratios(d, g, scales.sigma, cfg.kernel_cutoff);
      if (cfg.auto_tune) {
        // Pruning shifts the statistic's distribution; re-tune once the
        // median drifts too far from 1.
        const Scalar med = quantile(stats.valid_values(false), 0.5);
        if (std::abs(med - 1) > cfg.retune_gap) {
          const TuneResult t = tune_c(d, g, tune_options(lp));
          c_cur = t.c_star;
          scales = t.scales;
          stats = t.stats;
          tuned = true;
        }
      }
    }

    const bool ms = cfg.stat == ConvergenceStat::delta_prime_ms;
    const std::vector<Scalar> vals = stats.valid_values(ms);
    IterationRecord rec;
    rec.iteration = it;
    rec.edges = g.edge_count();
    rec.c = c_cur;
    rec.tuned = tuned;

    if (vals.empty()) {
      // Every node isolated: nothing to measure and nothing to prune.
      res.history.push_back(rec);
      res.converged = true;
      res.stop_reason = StopReason::no_outliers;
      break;
    }

    const OutlierThreshold th = outlier_threshold(vals, cfg.outlier_multiplier);
    const Vector& svec = ms ? stats.delta_prime_ms : stats.delta_prime;
    std::vector<Index> outs;
    for (Index i = 0; i < n; ++i)
      if (stats.valid[static_cast<std::size_t>(i)] && svec[i] > th.threshold) outs.push_back(i);
    std::stable_sort(outs.begin(), outs.end(),
                     [&](Index a, Index b) { return svec[a] > svec[b]; });

    rec.median_stat = th.median;
    rec.threshold = th.threshold;
    rec.outliers = static_cast<Index>(outs.size());
    res.history.push_back(rec);
    res.threshold = th;

    if (outs.empty()) {
      res.converged = true;
      res.stop_reason = StopReason::no_outliers;
      break;
    }
    if (it > max_iter) {
      res.converged = false;
      res.stop_reason = StopReason::max_iterations;
      break;
    }
    const std::vector<IndexPair> pruned = prune_step(g, d, outs, cfg.policy, cfg.keep_connected);
    res.history.back().pruned = pruned;
    res.pruned_edges.insert(res.pruned_edges.end(), pruned.begin(), pruned.end());
    if (pruned.empty()) {
      res.converged = false;
      res.stop_reason = StopReason::no_prunable_edges;
      break;
    }
  }

  res.iterations = static_cast<long>(res.history.size());
  res.g_star = g;
  res.sigma = scales.sigma;
  res.c_star = c_cur;
  res.stats = stats;
  if (cfg.build_weighted_output && res.sigma.size() == n)
    res.gw_star = multiscale_kernel(d, res.sigma, cfg.kernel_cutoff);
  return res;
}

}  // namespace ian
