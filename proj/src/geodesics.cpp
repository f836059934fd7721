#include "ian/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace ian {

namespace {

constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();

Vector dijkstra(const std::vector<std::vector<std::pair<Index, Scalar>>>& adj, Index source) {
  const Index n = static_cast<Index>(adj.size());
  if (source < 0 || source >= n) throw std::invalid_argument("source out of range");
  Vector dist = Vector::Constant(n, kInf);
  dist[source] = 0;
  using Item = std::pair<Scalar, Index>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  pq.push({0, source});
  while (!pq.empty()) {
    const auto [du, u] = pq.top();
    pq.pop();
    if (du > dist[u]) continue;
    for (const auto& [v, len] : adj[static_cast<std::size_t>(u)]) {
      const Scalar alt = du + len;
      if (alt < dist[v]) {
        dist[v] = alt;
        pq.push({alt, v});
      }
    }
  }
  return dist;
}

}  // namespace

Vector graph_geodesics(const NeighborGraph& g, const DistanceMatrix& d, Index source) {
  if (g.size() != d.size()) throw std::invalid_argument("graph and distance matrix sizes differ");
  std::vector<std::vector<std::pair<Index, Scalar>>> adj(static_cast<std::size_t>(g.size()));
  for (Index i = 0; i < g.size(); ++i)
    for (Index j : g.neighbors(i)) adj[static_cast<std::size_t>(i)].push_back({j, d(i, j)});
  return dijkstra(adj, source);
}

Matrix all_pairs_geodesics(const NeighborGraph& g, const DistanceMatrix& d) {
  if (g.size() != d.size()) throw std::invalid_argument("graph and distance matrix sizes differ");
  const Index n = g.size();
  std::vector<std::vector<std::pair<Index, Scalar>>> adj(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    for (Index j : g.neighbors(i)) adj[static_cast<std::size_t>(i)].push_back({j, d(i, j)});
  Matrix out(n, n);
  for (Index s = 0; s < n; ++s) out.row(s) = dijkstra(adj, s).transpose();
  return out;
}

Vector graph_geodesics_weighted(const NeighborGraph& g, const std::vector<Scalar>& edge_length,
                                Index source) {
  const auto edges = g.edges();
  if (edge_length.size() != edges.size())
    throw std::invalid_argument("one length per edge required");
  std::vector<std::vector<std::pair<Index, Scalar>>> adj(static_cast<std::size_t>(g.size()));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& [i, j] = edges[e];
    if (!(edge_length[e] >= 0)) throw std::invalid_argument("edge lengths must be non-negative");
    adj[static_cast<std::size_t>(i)].push_back({j, edge_length[e]});
    adj[static_cast<std::size_t>(j)].push_back({i, edge_length[e]});
  }
  return dijkstra(adj, source);
}

SparseMatrix graph_laplacian(const WeightedGraph& gw) {
  std::vector<Eigen::Triplet<Scalar>> trip;
  Vector diag = Vector::Zero(gw.n);
  for (Index i = 0; i < gw.n; ++i)
    for (const auto& [j, w] : gw.adj[static_cast<std::size_t>(i)]) {
      trip.emplace_back(i, j, -w);
      diag[i] += w;
    }
  for (Index i = 0; i < gw.n; ++i) trip.emplace_back(i, i, diag[i]);
  SparseMatrix lap(gw.n, gw.n);
  lap.setFromTriplets(trip.begin(), trip.end());
  return lap;
}

Index medoid(const DistanceMatrix& d) {
  if (d.size() == 0) throw std::invalid_argument("empty distance matrix");
  Index best = 0;
  Scalar best_sum = d.matrix().row(0).sum();
  for (Index i = 1; i < d.size(); ++i) {
    const Scalar s = d.matrix().row(i).sum();
    if (s < best_sum) {
      best_sum = s;
      best = i;
    }
  }
  return best;
}

Vector heat_geodesics(const WeightedGraph& gw, Index source, Scalar t, Scalar tol) {
  const Index n = gw.n;
  if (source < 0 || source >= n) throw std::invalid_argument("source out of range");
  if (!(t > 0)) throw std::invalid_argument("diffusion time must be positive");

  const std::vector<Index> labels = gw.component_labels();
  const Index comp = labels[static_cast<std::size_t>(source)];
  std::vector<Index> glob(static_cast<std::size_t>(n), -1);
  std::vector<Index> nodes;
  for (Index i = 0; i < n; ++i)
    if (labels[static_cast<std::size_t>(i)] == comp) {
      glob[static_cast<std::size_t>(i)] = static_cast<Index>(nodes.size());
      nodes.push_back(i);
    }
  const Index nc = static_cast<Index>(nodes.size());

  Vector out = Vector::Constant(n, kInf);
  if (nc == 1) {
    out[source] = 0;
    return out;
  }

  // Restricted Laplacian of the source's component.
  std::vector<Eigen::Triplet<Scalar>> trip;
  Vector diag = Vector::Zero(nc);
  for (Index l = 0; l < nc; ++l) {
    const Index i = nodes[static_cast<std::size_t>(l)];
    for (const auto& [j, w] : gw.adj[static_cast<std::size_t>(i)]) {
      const Index lj = glob[static_cast<std::size_t>(j)];
      trip.emplace_back(l, lj, -w);
      diag[l] += w;
    }
  }
  for (Index l = 0; l < nc; ++l) trip.emplace_back(l, l, diag[l]);
  SparseMatrix lap(nc, nc);
  lap.setFromTriplets(trip.begin(), trip.end());

  // Stage 1: diffuse a unit spike from the source for time t.
  SparseMatrix ident(nc, nc);
  ident.setIdentity();
  SparseMatrix heat = ident + t * lap;
  Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(tol);
  cg.compute(heat);
  Vector rhs = Vector::Zero(nc);
  rhs[glob[static_cast<std::size_t>(source)]] = 1;
  const Vector u = cg.solve(rhs);

  // Stage 2: normalize the per-edge gradient field to unit magnitude, using
  // the geometric mean of the endpoint gradient magnitudes.
  Vector mag = Vector::Zero(nc);
  for (Index l = 0; l < nc; ++l) {
    const Index i = nodes[static_cast<std::size_t>(l)];
    for (const auto& [j, w] : gw.adj[static_cast<std::size_t>(i)]) {
      const Scalar diff = u[glob[static_cast<std::size_t>(j)]] - u[l];
      mag[l] += w * diff * diff;
    }
    mag[l] = std::sqrt(mag[l]);
  }
  // Stage 3: divergence of the normalized field, one value per node.
  Vector div = Vector::Zero(nc);
  for (Index l = 0; l < nc; ++l) {
    const Index i = nodes[static_cast<std::size_t>(l)];
    for (const auto& [j, w] : gw.adj[static_cast<std::size_t>(i)]) {
      const Index lj = glob[static_cast<std::size_t>(j)];
      const Scalar denom = std::sqrt(mag[l] * mag[lj]);
      if (denom == 0) continue;
      const Scalar grad = std::sqrt(w) * (u[lj] - u[l]);
      div[l] += std::sqrt(w) * grad / denom;
    }
  }

  // Poisson solve L phi = div. L is singular with a constant null space, so
  // both sides stay projected onto the mean-zero subspace during CG.
  Vector b = div.array() - div.mean();
  Vector phi = Vector::Zero(nc);
  const Scalar bnorm = b.norm();
  if (bnorm > 0) {
    Vector r = b, p = b;
    Scalar rr = r.squaredNorm();
    const long max_cg = 10 * static_cast<long>(nc) + 100;
    for (long itcg = 0; itcg < max_cg; ++itcg) {
      Vector ap = lap * p;
      ap.array() -= ap.mean();
      const Scalar pap = p.dot(ap);
      if (pap <= 0) break;
      const Scalar alpha = rr / pap;
      phi += alpha * p;
      r -= alpha * ap;
      r.array() -= r.mean();
      const Scalar rr_next = r.squaredNorm();
      if (std::sqrt(rr_next) <= tol * bnorm) break;
      p = r + (rr_next / rr) * p;
      rr = rr_next;
    }
  }

  phi.array() -= phi[glob[static_cast<std::size_t>(source)]];
  if (phi.mean() < 0) phi = -phi;
  for (Index l = 0; l < nc; ++l) out[nodes[static_cast<std::size_t>(l)]] = phi[l];
  return out;
}

}  // namespace ian
