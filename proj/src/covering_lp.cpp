#include "ian/covering_lp.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ian {

namespace {

std::string num(Scalar v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void CoveringLP::dump(std::ostream& os) const {
  os << "covering-lp " << n << ' ' << num(c) << '\n';
  for (const auto& r : rows)
    os << "row " << r.i << ' ' << r.j << ' ' << num(r.alpha) << ' ' << num(r.beta) << '\n';
  for (Index i = 0; i < n; ++i)
    if (!isolated[static_cast<std::size_t>(i)]) os << "bound " << i << ' ' << num(upper[i]) << '\n';
  for (Index i = 0; i < n; ++i)
    if (!isolated[static_cast<std::size_t>(i)] && cost[i] != 1)
      os << "weight " << i << ' ' << num(cost[i]) << '\n';
  for (Index i = 0; i < n; ++i)
    if (isolated[static_cast<std::size_t>(i)])
      os << "isolated " << i << ' ' << num(isolated_sigma[i]) << '\n';
}

CoveringLP build_constraints(const DistanceMatrix& d, const NeighborGraph& g, Scalar c,
                             const CoveringOptions& opt) {
  const Index n = d.size();
  if (g.size() != n) throw std::invalid_argument("graph and distance matrix sizes differ");
  if (n < 2) throw std::invalid_argument("need at least two points");
  if (!(c > 0)) throw std::invalid_argument("bandwidth factor must be positive");
  if (c > 1 && !opt.rescale_bounds_above_one)
    throw std::invalid_argument(
        "bandwidth factor above 1 breaks the upper bounds; enable rescale_bounds_above_one");

  const Matrix& m = d.matrix();
  CoveringLP lp;
  lp.n = n;
  lp.c = c;
  lp.upper = Vector::Zero(n);
  lp.cost = Vector::Zero(n);
  lp.isolated.assign(static_cast<std::size_t>(n), 0);
  lp.isolated_sigma = Vector::Zero(n);

  for (Index i = 0; i < n; ++i) {
    if (g.degree(i) == 0) {
      lp.isolated[static_cast<std::size_t>(i)] = 1;
      Scalar nearest = std::numeric_limits<Scalar>::infinity();
      for (Index j = 0; j < n; ++j)
        if (j != i) nearest = std::min(nearest, m(i, j));
      lp.isolated_sigma[i] = nearest;
      continue;
    }
    Scalar r_fn = 0;
    for (Index j : g.neighbors(i)) r_fn = std::max(r_fn, m(i, j));
    lp.upper[i] = c > 1 ? c * r_fn : r_fn;
    if (opt.nonneighbor_weights) {
      // Weight by how close the nearest excluded point is: nodes whose
      // non-neighbors sit just past the neighborhood get small scales.
      Scalar nearest_out = std::numeric_limits<Scalar>::infinity();
      for (Index j = 0; j < n; ++j)
        if (j != i && !g.has_edge(i, j)) nearest_out = std::min(nearest_out, m(i, j));
      lp.cost[i] = std::isfinite(nearest_out) ? nearest_out / r_fn : 1;
    } else {
      lp.cost[i] = 1;
    }
  }

  for (const auto& [i, j] : g.edges()) {
    const Scalar v = c * m(i, j);
    const Scalar ui = lp.upper[i], uj = lp.upper[j];
    if (v > ui || v > uj)
      throw std::invalid_argument("edge target exceeds an upper bound; bandwidth factor too large");
    const bool at_i = v == ui, at_j = v == uj;
    if (at_i && at_j) {
      // Tangent at the vertex (v, v): sigma_i + sigma_j >= 2v.
      lp.rows.push_back({i, j, -1, 2 * v});
    } else {
      // Secant through (v, v) and (u_i, v^2/u_i); skipped when sigma_i
      // cannot exceed v.
      if (!at_i) lp.rows.push_back({i, j, -v / ui, v * (ui + v) / ui});
      // Secant through (v^2/u_j, u_j) and (v, v); skipped when sigma_j
      // cannot exceed v.
      if (!at_j) lp.rows.push_back({i, j, -uj / v, v + uj});
    }
  }
  return lp;
}

}  // namespace ian
