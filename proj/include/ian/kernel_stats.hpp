#pragma once

#include <vector>

#include "ian/distance_matrix.hpp"
#include "ian/neighbor_graph.hpp"
#include "ian/scale_opt.hpp"
#include "ian/types.hpp"

namespace ian {

// Symmetric weighted graph with sorted adjacency lists; the diagonal is
// implicit (w_ii = 1 by convention) and never stored, and degree sums used by
// the statistics below exclude it.
struct WeightedGraph {
  Index n = 0;
  std::vector<std::vector<std::pair<Index, Scalar>>> adj;

  Index size() const { return n; }
  Index edge_count() const;
  Scalar weight(Index i, Index j) const;  // 0 when absent
  std::vector<Index> component_labels(Index* count = nullptr) const;
  Index component_count() const;
};

// Multiscale Gaussian kernel w_ij = exp(-r_ij^2 / (sigma_i sigma_j)) over all
// pairs, sparsified by dropping weights below cutoff.
WeightedGraph multiscale_kernel(const DistanceMatrix& d, const Vector& sigma,
                                Scalar cutoff = 1e-16);

// Per-node kernel volume ratios.
//
//   delta_i     = sum_{j != i} exp(-r_ij^2 / sigma_i^2) / deg(i)
//   d_tilde_i   = log2(max(2, deg(i)))
//   delta'_i    = delta_i * (2/sqrt(pi))^d_tilde_i
//   delta'MS_i  = same as delta'_i with multiscale weights in the numerator
//
// Sums run over all other nodes (not just neighbors), with terms below
// cutoff dropped. Isolated nodes are masked: valid[i] = 0 and their entries
// are NaN.
struct VolumeRatioStats {
  Vector delta;
  Vector delta_prime;
  Vector delta_prime_ms;
  Vector d_tilde;
  std::vector<char> valid;

  // delta_prime (or delta_prime_ms) restricted to valid nodes.
  std::vector<Scalar> valid_values(bool multiscale = false) const;
};

VolumeRatioStats volume_ratios(const DistanceMatrix& d, const NeighborGraph& g,
                               const Vector& sigma, Scalar cutoff = 1e-16);

// Linear-interpolation quantile (midpoint median for even counts).
// p in [0, 1]; values need not be sorted. Throws on empty input.
Scalar quantile(std::vector<Scalar> values, Scalar p);

// Inverse standard normal CDF (Wichura's rational approximation, accurate to
// ~1e-15). p must lie in (0, 1).
Scalar inverse_normal_cdf(Scalar p);

// Outlier threshold from quartiles only: the population mean and standard
// deviation are estimated as
//   mean ~ (q1 + median + q3) / 3
//   std  ~ (q3 - q1) / eta(n),  eta(n) = 2 Phi^-1((0.75n - 0.125)/(n + 0.25))
// and the threshold is mean + multiplier * std. Values above it (strictly)
// are outliers. A constant population yields threshold = that constant.
struct OutlierThreshold {
  Scalar threshold = 0;
  Scalar mean = 0;
  Scalar stddev = 0;
  Scalar q1 = 0, median = 0, q3 = 0;
};

OutlierThreshold outlier_threshold(const std::vector<Scalar>& values, Scalar multiplier = 4.5);

// Default bandwidth-factor grid: 0.30 to 1.00 in steps of 0.005.
std::vector<Scalar> default_c_grid();

struct TuneOptions {
  std::vector<Scalar> grid;  // empty: default_c_grid()
  CoveringOptions covering;
  SimplexOptions simplex;
  Scalar cutoff = 1e-16;
  bool use_greedy = false;  // greedy scales instead of LP solves (huge graphs)
};

// Sweeps the grid, solving the covering LP at each c, and picks
// c* = argmin |median delta' - 1| with ties resolved toward larger c. The
// returned scales come from a standalone re-solve at c*, so they do not
// depend on sweep order. curve holds (c, median delta') per grid value.
struct TuneResult {
  Scalar c_star = 1;
  ScaleVector scales;
  VolumeRatioStats stats;
  std::vector<std::pair<Scalar, Scalar>> curve;
};

TuneResult tune_c(const DistanceMatrix& d, const NeighborGraph& g, const TuneOptions& opt = {});

// Sum of per-point Gaussians at query locations:
// field(q) = sum_i exp(-|q - x_i|^2 / sigma_i^2).
Vector kernel_field_sum(const Matrix& points, const Vector& sigma, const Matrix& queries);

}  // namespace ian
