#pragma once

#include <Eigen/Sparse>

#include "ian/distance_matrix.hpp"
#include "ian/kernel_stats.hpp"
#include "ian/neighbor_graph.hpp"
#include "ian/types.hpp"

namespace ian {

using SparseMatrix = Eigen::SparseMatrix<Scalar>;

// Shortest-path distances from source along graph edges weighted by their
// metric length r_ij. Unreachable nodes get +inf.
Vector graph_geodesics(const NeighborGraph& g, const DistanceMatrix& d, Index source);

// Row s = distances from source s (n x n, symmetric for undirected graphs).
Matrix all_pairs_geodesics(const NeighborGraph& g, const DistanceMatrix& d);

// Same, but with edge lengths supplied explicitly (parallel to g's edges()).
Vector graph_geodesics_weighted(const NeighborGraph& g, const std::vector<Scalar>& edge_length,
                                Index source);

// Combinatorial Laplacian L = D - W of a weighted graph.
SparseMatrix graph_laplacian(const WeightedGraph& gw);

// Node minimizing the total distance to all others (ties: lowest index).
Index medoid(const DistanceMatrix& d);

// Heat-method geodesic distances on a weighted graph:
//   1. diffuse: solve (I + t L) u = e_source
//   2. per-edge gradient g_ij = sqrt(w_ij) (u_j - u_i), normalized to unit
//      local magnitude via the geometric mean of the endpoint magnitudes
//   3. integrate: solve the Poisson problem L phi = div X (mean-zero
//      projected), then shift so phi[source] = 0 and orient so distances
//      increase away from the source
// Solves use conjugate gradients with relative tolerance tol. Nodes outside
// the source's component get +inf. The scale of phi is graph-dependent; use
// it for orderings and level sets rather than metric lengths.
Vector heat_geodesics(const WeightedGraph& gw, Index source, Scalar t, Scalar tol = 1e-8);

}  // namespace ian
