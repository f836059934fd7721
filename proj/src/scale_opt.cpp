#include "ian/scale_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ian {

ScaleVector solve_scales(const CoveringLP& lp, const SimplexOptions& opt) {
  // Compact the non-isolated nodes into LP variables.
  std::vector<Index> var_of(static_cast<std::size_t>(lp.n), -1);
  std::vector<Index> node_of;
  for (Index i = 0; i < lp.n; ++i)
    if (!lp.isolated[static_cast<std::size_t>(i)]) {
      var_of[static_cast<std::size_t>(i)] = static_cast<Index>(node_of.size());
      node_of.push_back(i);
    }
  const Index nv = static_cast<Index>(node_of.size());

  InequalityLP prog;
  prog.num_vars = nv;
  prog.upper.resize(nv);
  prog.cost.resize(nv);
  for (Index q = 0; q < nv; ++q) {
    prog.upper[q] = lp.upper[node_of[static_cast<std::size_t>(q)]];
    prog.cost[q] = lp.cost[node_of[static_cast<std::size_t>(q)]];
  }
  prog.rows.reserve(lp.rows.size());
  prog.rhs.resize(static_cast<Index>(lp.rows.size()));
  Index r = 0;
  for (const auto& row : lp.rows) {
    // alpha sigma_i - sigma_j <= -beta becomes -alpha sigma_i + sigma_j >= beta.
    prog.rows.push_back({{var_of[static_cast<std::size_t>(row.i)], -row.alpha},
                         {var_of[static_cast<std::size_t>(row.j)], Scalar(1)}});
    prog.rhs[r++] = row.beta;
  }

  const SimplexResult sol = solve_inequality_lp(prog, opt);

  ScaleVector out;
  out.c = lp.c;
  out.objective = sol.objective;
  out.lp_iterations = sol.iterations;
  out.from_greedy = false;
  out.sigma.resize(lp.n);
  for (Index i = 0; i < lp.n; ++i)
    out.sigma[i] = lp.isolated[static_cast<std::size_t>(i)]
                       ? lp.isolated_sigma[i]
                       : sol.x[var_of[static_cast<std::size_t>(i)]];

  // Every constraint row must hold within tolerance; a miss is a solver bug.
  for (const auto& row : lp.rows) {
    const Scalar lhs = row.alpha * out.sigma[row.i] - out.sigma[row.j];
    if (lhs > -row.beta + 1e-9 * std::max(Scalar(1), std::abs(row.beta)))
      throw std::runtime_error("scale solution violates a covering constraint");
  }
  for (Index i = 0; i < lp.n; ++i)
    if (!(out.sigma[i] > 0)) throw std::runtime_error("scale solution has a non-positive scale");
  return out;
}

namespace {

// The one or two linearized rows belonging to a single edge.
struct EdgeRows {
  const CoveringRow* row[2] = {nullptr, nullptr};
  int count = 0;
};

// Minimal value of sigma at node x satisfying every row of the edge, given
// the other endpoint's value. Rows read sigma_{row.j} >= alpha sigma_{row.i}
// + beta with alpha < 0, so either orientation can be solved directly.
Scalar envelope_completion(const EdgeRows& er, Index x, Scalar other) {
  Scalar need = 0;
  for (int k = 0; k < er.count; ++k) {
    const CoveringRow& row = *er.row[k];
    Scalar lb;
    if (row.j == x)
      lb = row.alpha * other + row.beta;
    else if (row.alpha < 0)
      lb = (other - row.beta) / row.alpha;
    else
      continue;
    need = std::max(need, lb);
  }
  return need;
}

}  // namespace

ScaleVector greedy_scales(const DistanceMatrix& d, const NeighborGraph& g, Scalar c,
                          const CoveringOptions& opt) {
  // The sweep assigns scales against the same linearized envelope the exact
  // solver optimizes over (its feasible set lies inside the hyperbolic
  // covering region, so the product constraints hold automatically). Keeping
  // every assignment row-feasible makes the greedy output a feasible point of
  // that program, hence never cheaper than its optimum.
  CoveringLP lp = build_constraints(d, g, c, opt);
  const Matrix& m = d.matrix();
  const Index n = lp.n;

  std::map<IndexPair, EdgeRows> rows_of;
  for (const auto& row : lp.rows) {
    IndexPair key = row.i < row.j ? IndexPair(row.i, row.j) : IndexPair(row.j, row.i);
    EdgeRows& er = rows_of[key];
    er.row[er.count++] = &row;
  }

  // Longest edges first: the largest, most constrained scales are fixed
  // early, and scales only ever grow, so earlier edges stay covered (every
  // row has non-positive slope in the other variable).
  std::vector<IndexPair> edges = g.edges();
  std::sort(edges.begin(), edges.end(), [&](const IndexPair& a, const IndexPair& b) {
    const Scalar ra = m(a.first, a.second), rb = m(b.first, b.second);
    if (ra != rb) return ra > rb;
    return a < b;
  });

  Vector sigma = Vector::Zero(n);  // 0 marks unassigned
  for (const auto& [i, j] : edges) {
    const Scalar v = c * m(i, j);
    const EdgeRows& er = rows_of[IndexPair(i, j)];
    const bool hi = sigma[i] > 0, hj = sigma[j] > 0;
    if (!hi && !hj) {
      // even split: the vertex (v, v) sits on every row of this edge
      sigma[i] = std::min(v, lp.upper[i]);
      sigma[j] = std::min(v, lp.upper[j]);
    } else if (hi != hj) {
      const Index have = hi ? i : j, need = hi ? j : i;
      Scalar want = envelope_completion(er, need, sigma[have]);
      if (want > lp.upper[need]) {
        // rebalance: cap the new scale and push the overflow back; at the cap
        // the envelope meets the hyperbola, which the other bound can absorb
        sigma[need] = lp.upper[need];
        sigma[have] = std::max(sigma[have], envelope_completion(er, have, lp.upper[need]));
      } else {
        sigma[need] = want;
      }
    } else {
      // joint inflation: smallest a >= 1 with (a sigma_i, a sigma_j) feasible
      Scalar a = 1;
      for (int k = 0; k < er.count; ++k) {
        const CoveringRow& row = *er.row[k];
        const Scalar denom = sigma[row.j] - row.alpha * sigma[row.i];
        if (denom > 0) a = std::max(a, row.beta / denom);
      }
      if (a == 1) continue;
      Scalar si = a * sigma[i], sj = a * sigma[j];
      if (si > lp.upper[i]) {
        si = lp.upper[i];
        sj = std::max(sigma[j], envelope_completion(er, j, si));
      } else if (sj > lp.upper[j]) {
        sj = lp.upper[j];
        si = std::max(sigma[i], envelope_completion(er, i, sj));
      }
      sigma[i] = si;
      sigma[j] = sj;
    }
  }

  ScaleVector out;
  out.c = c;
  out.from_greedy = true;
  out.sigma = sigma;
  Scalar obj = 0;
  for (Index i = 0; i < n; ++i) {
    if (lp.isolated[static_cast<std::size_t>(i)])
      out.sigma[i] = lp.isolated_sigma[i];
    else
      obj += lp.cost[i] * out.sigma[i];
  }
  out.objective = obj;
  return out;
}

Scalar covering_violation(const DistanceMatrix& d, const NeighborGraph& g, const Vector& sigma,
                          Scalar c) {
  Scalar worst = 0;
  for (const auto& [i, j] : g.edges()) {
    const Scalar target = c * d(i, j);
    const Scalar have = std::sqrt(sigma[i] * sigma[j]);
    worst = std::max(worst, (target - have) / target);
  }
  return std::max(worst, Scalar(0));
}

bool verify_covering(const DistanceMatrix& d, const NeighborGraph& g, const Vector& sigma,
                     Scalar c, Scalar rel_tol) {
  return covering_violation(d, g, sigma, c) <= rel_tol;
}

}  // namespace ian
