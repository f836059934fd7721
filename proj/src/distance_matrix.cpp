#include "ian/distance_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ian {

DistanceMatrix::DistanceMatrix(Matrix d) : d_(std::move(d)) {
  const Index n = d_.rows();
  if (d_.cols() != n) throw std::invalid_argument("distance matrix must be square");
  if (!d_.allFinite()) throw std::invalid_argument("distance matrix must be finite");
  const Scalar scale = n > 0 ? std::max(d_.maxCoeff(), Scalar(1)) : Scalar(1);
  for (Index i = 0; i < n; ++i) {
    if (d_(i, i) != 0)
      throw std::invalid_argument("distance matrix diagonal must be zero (row " +
                                  std::to_string(i) + ")");
    for (Index j = i + 1; j < n; ++j) {
      const Scalar a = d_(i, j), b = d_(j, i);
      if (a < 0 || b < 0) throw std::invalid_argument("distances must be non-negative");
      if (std::abs(a - b) > 1e-12 * scale)
        throw std::invalid_argument("distance matrix must be symmetric (entries " +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  // Exact symmetry simplifies every downstream comparison.
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) d_(j, i) = d_(i, j);
}

DistanceMatrix pairwise_distances(const Matrix& points) {
  const Index n = points.rows();
  Matrix d(n, n);
  d.setZero();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const Scalar r = (points.row(i) - points.row(j)).norm();
      d(i, j) = r;
      d(j, i) = r;
    }
  return DistanceMatrix(std::move(d));
}

NeighborOrder::NeighborOrder(const DistanceMatrix& d) {
  const Index n = d.size();
  if (n > static_cast<Index>(std::numeric_limits<std::uint32_t>::max()))
    throw std::invalid_argument("too many points for neighbor ordering");
  rows_.resize(static_cast<std::size_t>(n));
  const Matrix& m = d.matrix();
  for (Index i = 0; i < n; ++i) {
    auto& row = rows_[static_cast<std::size_t>(i)];
    row.resize(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
    std::size_t w = 0;
    for (Index j = 0; j < n; ++j)
      if (j != i) row[w++] = static_cast<std::uint32_t>(j);
    // stable sort keeps equal distances in index order
    std::stable_sort(row.begin(), row.end(), [&](std::uint32_t a, std::uint32_t b) {
      return m(i, static_cast<Index>(a)) < m(i, static_cast<Index>(b));
    });
  }
}

}  // namespace ian
