#pragma once

#include <iosfwd>
#include <vector>

#include "ian/distance_matrix.hpp"
#include "ian/neighbor_graph.hpp"
#include "ian/types.hpp"

namespace ian {

// One linear constraint alpha * sigma_i - sigma_j <= -beta, i.e. the
// half-plane sigma_j >= alpha * sigma_i + beta with alpha <= 0.
struct CoveringRow {
  Index i = 0;
  Index j = 0;
  Scalar alpha = 0;
  Scalar beta = 0;
};

struct CoveringOptions {
  // Allow c > 1 by scaling every upper bound to c * r_fn; without this flag
  // c > 1 is rejected because sigma = r_fn can no longer cover the edges.
  bool rescale_bounds_above_one = false;
  // Objective weights nu_i = r_nonneighbor / r_fn instead of all ones.
  bool nonneighbor_weights = false;
};

// The per-node bandwidth program: minimize sum_i nu_i sigma_i subject to the
// linearized covering constraints (edge (i, j) must satisfy
// sigma_i * sigma_j >= (c r_ij)^2) and box bounds 0 < sigma_i <= upper_i.
//
// Each edge contributes one or two rows hugging the hyperbola
// sigma_i sigma_j = v^2, v = c r_ij, from inside the box:
//   - v below both bounds: the two secants through the vertex (v, v) and the
//     hyperbola's intersections with sigma_i = u_i and sigma_j = u_j;
//   - v equal to exactly one bound: the single remaining secant;
//   - v equal to both bounds: the tangent sigma_i + sigma_j >= 2v.
// Secants of a convex region lie inside it, so LP-feasible scales always
// satisfy the original product constraints.
//
// Nodes without neighbors are excluded from the program; their scale is
// pinned to the distance of the nearest point.
struct CoveringLP {
  Index n = 0;
  Scalar c = 1;
  std::vector<CoveringRow> rows;
  Vector upper;
  Vector cost;
  std::vector<char> isolated;
  Vector isolated_sigma;

  // Plain text dump, one item per line:
  //   covering-lp <n> <c>
  //   row <i> <j> <alpha> <beta>     (alpha*sigma_i - sigma_j <= -beta)
  //   bound <i> <upper_i>
  //   weight <i> <nu_i>              (only when differing from 1)
  //   isolated <i> <sigma_i>
  void dump(std::ostream& os) const;
};

// Throws std::invalid_argument for c <= 0, for c > 1 without rescaled
// bounds, or when fewer than two points are given.
CoveringLP build_constraints(const DistanceMatrix& d, const NeighborGraph& g, Scalar c,
                             const CoveringOptions& opt = {});

}  // namespace ian
