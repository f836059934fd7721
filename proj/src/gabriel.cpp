#include "ian/gabriel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ian {

namespace {

constexpr Scalar kPi = 3.14159265358979323846;

// Closed-ball blocking in squared distances: the midpoint m of the candidate
// edge (i, j) satisfies |m - k|^2 = (2 r_ik^2 + 2 r_jk^2 - r_ij^2) / 4, so
// m <= (r_ij / 2) (1 + tol) is equivalent to
//   r_ik^2 + r_jk^2 <= r_ij^2 * (1 + (1 + tol)^2) / 2.
inline Scalar blocking_factor(Scalar tol) { return (1 + (1 + tol) * (1 + tol)) / 2; }

inline bool blocks(Scalar rik2, Scalar rjk2, Scalar rij2, Scalar bfac) {
  return rik2 + rjk2 <= rij2 * bfac;
}

}  // namespace

bool is_gabriel_edge(const DistanceMatrix& d, Index i, Index j, Scalar tol) {
  if (i == j) throw std::invalid_argument("edge endpoints must differ");
  const Matrix& m = d.matrix();
  const Scalar rij2 = m(i, j) * m(i, j);
  const Scalar bfac = blocking_factor(tol);
  for (Index k = 0; k < d.size(); ++k) {
    if (k == i || k == j) continue;
    if (blocks(m(i, k) * m(i, k), m(j, k) * m(j, k), rij2, bfac)) return false;
  }
  return true;
}

NeighborGraph gabriel_graph(const DistanceMatrix& d, Scalar tol) {
  const Index n = d.size();
  const Matrix& m = d.matrix();
  const Scalar bfac = blocking_factor(tol);
  NeighborGraph g(n);
  if (n < 2) return g;

  // Candidate blockers are probed in ascending distance from i: once
  // r_ik > r_ij the scan can stop, because then r_ik^2 + r_jk^2 > r_ij^2
  // while the blocking threshold is at most r_ij^2 (up to the tolerance).
  const NeighborOrder order(d);
  for (Index i = 0; i < n; ++i) {
    const auto& row = order.row(i);
    for (std::size_t pos = 0; pos < row.size(); ++pos) {
      const Index j = static_cast<Index>(row[pos]);
      if (j < i) continue;
      const Scalar rij = m(i, j);
      const Scalar rij2 = rij * rij;
      bool keep = true;
      for (std::size_t t = 0; t < row.size(); ++t) {
        const Index k = static_cast<Index>(row[t]);
        if (m(i, k) > rij) break;
        if (k == j) continue;
        if (blocks(m(i, k) * m(i, k), m(j, k) * m(j, k), rij2, bfac)) {
          keep = false;
          break;
        }
      }
      if (keep) g.add_edge(i, j);
    }
  }
  return g;
}

Index acute_triangle_violations(const DistanceMatrix& d, const NeighborGraph& g) {
  // Enumerates each 3-clique once via i < j < k and checks whether its
  // largest angle fails to be acute: a^2 + b^2 <= c^2 for the longest side c.
  const Matrix& m = d.matrix();
  Index violations = 0;
  for (const auto& [i, j] : g.edges()) {
    const auto& ni = g.neighbors(i);
    const auto& nj = g.neighbors(j);
    std::vector<Index> common;
    std::set_intersection(ni.begin(), ni.end(), nj.begin(), nj.end(), std::back_inserter(common));
    for (Index k : common) {
      if (k <= j) continue;
      const Scalar a2 = m(i, j) * m(i, j);
      const Scalar b2 = m(i, k) * m(i, k);
      const Scalar c2 = m(j, k) * m(j, k);
      const Scalar longest = std::max({a2, b2, c2});
      if (a2 + b2 + c2 - longest <= longest) ++violations;
    }
  }
  return violations;
}

Scalar max_curvature(Scalar r_ik, Scalar r_jk) {
  if (r_ik <= 0 || r_jk <= 0) throw std::invalid_argument("leg lengths must be positive");
  return 2 / std::sqrt(r_ik * r_ik + r_jk * r_jk);
}

Scalar max_curvature_for_reach(Scalar t) {
  if (t <= 0) throw std::invalid_argument("reach must be positive");
  return kPi / (2 * t);
}

DegreeStats degree_stats(const NeighborGraph& g) {
  return degree_stats(g, std::vector<char>(static_cast<std::size_t>(g.size()), 1));
}

DegreeStats degree_stats(const NeighborGraph& g, const std::vector<char>& mask) {
  if (static_cast<Index>(mask.size()) != g.size())
    throw std::invalid_argument("mask size must match graph size");
  DegreeStats s;
  std::vector<Scalar> degs;
  for (Index i = 0; i < g.size(); ++i) {
    if (!mask[static_cast<std::size_t>(i)]) continue;
    const Index deg = g.degree(i);
    degs.push_back(static_cast<Scalar>(deg));
    if (degs.size() == 1) {
      s.min = deg;
      s.max = deg;
    } else {
      s.min = std::min(s.min, deg);
      s.max = std::max(s.max, deg);
    }
    if (static_cast<std::size_t>(deg) >= s.histogram.size())
      s.histogram.resize(static_cast<std::size_t>(deg) + 1, 0);
    ++s.histogram[static_cast<std::size_t>(deg)];
  }
  s.degree = Eigen::Map<const Vector>(degs.data(), static_cast<Index>(degs.size()));
  if (!degs.empty()) s.mean = s.degree.mean();
  return s;
}

}  // namespace ian
