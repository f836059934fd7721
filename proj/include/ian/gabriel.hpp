#pragma once

#include <vector>

#include "ian/distance_matrix.hpp"
#include "ian/neighbor_graph.hpp"
#include "ian/types.hpp"

namespace ian {

// Gabriel graph from pairwise distances alone. An edge (i, j) is present iff
// no third point k lies inside or on the closed ball whose diameter is the
// segment ij; the squared distance from k to the segment midpoint is
// available from distances only:
//
//   m^2 = (2 r_ik^2 + 2 r_jk^2 - r_ij^2) / 4.
//
// A point with m <= (r_ij / 2) * (1 + tol) blocks the edge, so exact right
// angles (points on the ball boundary) block. Candidate blockers are scanned
// in ascending distance from i with an early exit, which keeps the common
// case near O(n^2) while matching the brute-force definition exactly.
NeighborGraph gabriel_graph(const DistanceMatrix& d, Scalar tol = 1e-12);

// Single-pair test against all other points; same semantics as above.
bool is_gabriel_edge(const DistanceMatrix& d, Index i, Index j, Scalar tol = 1e-12);

// Number of 3-cliques in g containing a non-acute angle, i.e. some labeling
// with r_ik^2 + r_jk^2 <= r_ij^2. Gabriel graphs built with closed-ball
// blocking have none.
Index acute_triangle_violations(const DistanceMatrix& d, const NeighborGraph& g);

// Largest curvature consistent with an edge whose endpoints share a common
// neighbor at distances r_ik and r_jk: 2 / sqrt(r_ik^2 + r_jk^2).
Scalar max_curvature(Scalar r_ik, Scalar r_jk);

// Largest curvature consistent with a tubular neighborhood (reach) of size t:
// pi / (2 t).
Scalar max_curvature_for_reach(Scalar t);

struct DegreeStats {
  Vector degree;                  // per node (over the mask when given)
  Scalar mean = 0;
  Index min = 0;
  Index max = 0;
  std::vector<Index> histogram;   // histogram[k] = number of nodes of degree k
};

DegreeStats degree_stats(const NeighborGraph& g);
// Restricted to nodes with mask[i] != 0; mask must have size n.
DegreeStats degree_stats(const NeighborGraph& g, const std::vector<char>& mask);

}  // namespace ian
