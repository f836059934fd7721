#pragma once

#include <vector>

#include "ian/distance_matrix.hpp"
#include "ian/kernel_stats.hpp"
#include "ian/neighbor_graph.hpp"
#include "ian/types.hpp"

namespace ian {

struct EmbeddingResult {
  Matrix coords;       // n x m
  Vector eigenvalues;  // one per coordinate (largest component for diffusion)
  std::vector<Index> component;  // component id per node
  bool disconnected = false;     // diffusion ran per component
};

// Diffusion map of the weighted graph, density-normalized (alpha = 1):
// with q = row sums of (W + I), the kernel is renormalized as
// K = W_ij / (q_i q_j), and the embedding uses the eigenpairs of the
// symmetric operator S = D^-1/2 K D^-1/2 (D = row sums of K). Coordinate k
// is lambda_k^t * D^-1/2 phi_k for the m leading nontrivial eigenpairs,
// skipping the stationary pair (lambda = 1). Disconnected graphs embed per
// component (flagged); each eigenvector's sign is fixed so its first
// largest-magnitude entry is positive.
EmbeddingResult diffusion_map(const WeightedGraph& gw, int m, Scalar t = 1);

// Classical multidimensional scaling of all-pairs graph geodesics: squared
// distances are double-centered (B = -1/2 J D2 J) and the top m eigenpairs
// give coordinates sqrt(lambda_k) phi_k. Throws std::invalid_argument for
// disconnected graphs. Non-positive trailing eigenvalues yield zero
// coordinates.
EmbeddingResult isomap(const NeighborGraph& g, const DistanceMatrix& d, int m);

// Kendall rank correlation (tau-b) in O(n log n) via merge counting.
// Equal-length vectors, n >= 2; ties are handled by the tau-b normalization.
Scalar kendall_tau(const Vector& a, const Vector& b);

}  // namespace ian
