#pragma once

#include <vector>

#include "ian/distance_matrix.hpp"
#include "ian/neighbor_graph.hpp"
#include "ian/types.hpp"

namespace ian {

// Log-log derivative of the Gaussian neighborhood count
//
//   Z(sigma)  = sum_l exp(-r_l^2 / (2 sigma^2))
//   Z'(sigma) = [sum_l r_l^2 exp(-r_l^2 / (2 sigma^2))]
//               / [sigma^2 sum_l exp(-r_l^2 / (2 sigma^2))]
//
// evaluated on sigma_grid, where sq_dists holds the squared distances r_l^2
// from a fixed center to every member of its neighborhood (the center itself
// contributes r = 0). For data uniform on a d-manifold the curve plateaus
// near d; it tends to 0 in both sigma limits.
Vector zprime_curve(const Vector& sq_dists, const Vector& sigma_grid);

// count log-spaced values from lo to hi inclusive.
Vector log_spaced_grid(Scalar lo, Scalar hi, int count);

struct NcdOptions {
  int hops = 3;          // neighborhood rings used around each node
  int grid_size = 200;   // sigma grid resolution
  Scalar grid_lo_factor = 0.1;  // grid start: factor * min nonzero distance
  Scalar grid_hi_factor = 10;   // grid end: factor * max distance
};

// Neighborhood-count dimension per node:
//   - extend N'(i) by hop expansion (at least `hops` rings, continuing while
//     |N'(i)| < 10^(d_guess/2) with d_guess = log2(max(2, deg i)))
//   - re-center at the member of N(i) minimizing the median squared distance
//     to N'(i)
//   - d_hat_i = max of the Z' curve over a log-spaced sigma grid
//   - d_hat'_i = mean of d_hat over N(i) (self included)
//   - d_tilde'_i = mean of floor(log2(deg j)) over N(i)
//   - d_star_i = max(d_hat'_i, d_tilde'_i)
// Isolated nodes are masked (valid[i] = 0, NaN entries).
struct DimensionEstimate {
  Vector d_hat;
  Vector d_hat_prime;
  Vector d_tilde_prime;
  Vector d_star;
  std::vector<char> valid;
};

DimensionEstimate ncd_dimension(const DistanceMatrix& d, const NeighborGraph& g,
                                const NcdOptions& opt = {});

struct MleOptions {
  // Average inverse estimates and invert at the end instead of averaging the
  // estimates directly.
  bool use_inverse_average = false;
};

// Maximum-likelihood dimension from the k nearest neighbors of each node,
//   m_i = [ (1/(k-1)) sum_{j=1..k-1} log(T_k / T_j) ]^-1,
// then smoothed by averaging over {i} union N(i) (the k-NN set, or the graph
// adjacency for the graph variant). Requires k >= 2; nodes whose
// neighborhood has fewer than 2 members are masked with NaN.
Vector mle_dimension_knn(const DistanceMatrix& d, int k, const MleOptions& opt = {});
Vector mle_dimension_graph(const DistanceMatrix& d, const NeighborGraph& g,
                           const MleOptions& opt = {});

}  // namespace ian
