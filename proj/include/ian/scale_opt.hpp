#pragma once

#include "ian/covering_lp.hpp"
#include "ian/simplex.hpp"
#include "ian/types.hpp"

namespace ian {

struct ScaleVector {
  Vector sigma;          // one positive bandwidth per node
  Scalar c = 1;
  Scalar objective = 0;  // weighted sum of scales over non-isolated nodes
  bool from_greedy = false;
  long lp_iterations = 0;
};

// Solves the covering program to a deterministic optimal vertex. The result
// is verified to cover every edge within 1e-9 relative tolerance; a failure
// indicates a solver bug and throws std::runtime_error.
ScaleVector solve_scales(const CoveringLP& lp, const SimplexOptions& opt = {});

// Feasible (generally suboptimal) scales via a single greedy sweep: edges in
// decreasing length get an even split, a one-sided completion, or a joint
// inflation, always against the same linearized rows the exact solver uses,
// with overflow past an upper bound rebalanced onto the other endpoint. The
// output therefore covers every edge and never beats the solver's objective
// on the same instance. Much cheaper than the LP for very large graphs.
ScaleVector greedy_scales(const DistanceMatrix& d, const NeighborGraph& g, Scalar c,
                          const CoveringOptions& opt = {});

// Worst relative covering shortfall max_e (c r_ij - sqrt(sigma_i sigma_j)) /
// (c r_ij), clamped at zero. Zero for exactly feasible scales.
Scalar covering_violation(const DistanceMatrix& d, const NeighborGraph& g, const Vector& sigma,
                          Scalar c);

bool verify_covering(const DistanceMatrix& d, const NeighborGraph& g, const Vector& sigma,
                     Scalar c, Scalar rel_tol = 1e-9);

}  // namespace ian
