#pragma once

#include <cstdint>
#include <vector>

#include "ian/types.hpp"

namespace ian {

// Symmetric pairwise-distance matrix with a zero diagonal.
//
// Construction validates: square, zero diagonal, finite, non-negative, and
// symmetric within 1e-12 relative to the largest entry; the stored matrix is
// then symmetrized exactly so downstream code can rely on d(i,j) == d(j,i).
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(Matrix d);

  Index size() const { return d_.rows(); }
  Scalar operator()(Index i, Index j) const { return d_(i, j); }
  const Matrix& matrix() const { return d_; }

 private:
  Matrix d_;
};

DistanceMatrix pairwise_distances(const Matrix& points);

// Per-row neighbor orders sorted by ascending distance (ties by index),
// excluding the row's own index. Rows are stored as uint32 to keep the
// footprint manageable for large n.
class NeighborOrder {
 public:
  explicit NeighborOrder(const DistanceMatrix& d);
  const std::vector<std::uint32_t>& row(Index i) const { return rows_[i]; }
  Index size() const { return static_cast<Index>(rows_.size()); }

 private:
  std::vector<std::vector<std::uint32_t>> rows_;
};

}  // namespace ian
