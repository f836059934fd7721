#include "ian/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ian {

namespace {

constexpr Scalar kNan = std::numeric_limits<Scalar>::quiet_NaN();

Scalar median_of(std::vector<Scalar> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace

Vector zprime_curve(const Vector& sq_dists, const Vector& sigma_grid) {
  Vector out(sigma_grid.size());
  const ArrayX r2 = sq_dists.array();
  for (Index k = 0; k < sigma_grid.size(); ++k) {
    const Scalar s2 = sigma_grid[k] * sigma_grid[k];
    const ArrayX e = (-r2 / (2 * s2)).exp();
    const Scalar den = s2 * e.sum();
    out[k] = den > 0 ? (r2 * e).sum() / den : 0;
  }
  return out;
}

Vector log_spaced_grid(Scalar lo, Scalar hi, int count) {
  if (!(lo > 0) || !(hi >= lo)) throw std::invalid_argument("grid bounds must satisfy 0 < lo <= hi");
  if (count < 1) throw std::invalid_argument("grid needs at least one value");
  Vector grid(count);
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  const Scalar ratio = hi / lo;
  for (int k = 0; k < count; ++k)
    grid[k] = lo * std::pow(ratio, static_cast<Scalar>(k) / static_cast<Scalar>(count - 1));
  return grid;
}

DimensionEstimate ncd_dimension(const DistanceMatrix& d, const NeighborGraph& g,
                                const NcdOptions& opt) {
  const Index n = d.size();
  if (g.size() != n) throw std::invalid_argument("graph and distance matrix sizes differ");
  if (opt.hops < 1 || opt.grid_size < 1) throw std::invalid_argument("invalid neighborhood options");
  const Matrix& m = d.matrix();

  DimensionEstimate out;
  out.d_hat.setConstant(n, kNan);
  out.d_hat_prime.setConstant(n, kNan);
  out.d_tilde_prime.setConstant(n, kNan);
  out.d_star.setConstant(n, kNan);
  out.valid.assign(static_cast<std::size_t>(n), 0);

  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Index i = 0; i < n; ++i) {
    const Index deg = g.degree(i);
    if (deg == 0) continue;
    out.valid[static_cast<std::size_t>(i)] = 1;

    // Extended neighborhood: at least `hops` rings, and keep expanding while
    // the member count falls short of 10^(d_guess / 2).
    const Scalar d_guess = std::log2(static_cast<Scalar>(std::max<Index>(2, deg)));
    const Scalar target = std::pow(Scalar(10), d_guess / 2);
    std::vector<Index> members{i};
    std::vector<Index> frontier{i};
    seen[static_cast<std::size_t>(i)] = 1;
    int hop = 0;
    while (!frontier.empty() &&
           (hop < opt.hops || static_cast<Scalar>(members.size()) < target)) {
      std::vector<Index> next;
      for (Index v : frontier)
        for (Index w : g.neighbors(v))
          if (!seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = 1;
            next.push_back(w);
            members.push_back(w);
          }
      frontier = std::move(next);
      ++hop;
    }
    for (Index v : members) seen[static_cast<std::size_t>(v)] = 0;

    // Re-center at the candidate (the node or one of its neighbors) with the
    // smallest median squared distance to the extended neighborhood.
    std::vector<Index> cands = g.neighbors(i);
    cands.insert(std::lower_bound(cands.begin(), cands.end(), i), i);
    Index center = -1;
    Scalar center_med = kNan;
    for (Index cand : cands) {
      std::vector<Scalar> sq;
      sq.reserve(members.size());
      for (Index l : members) sq.push_back(m(cand, l) * m(cand, l));
      const Scalar med = median_of(std::move(sq));
      if (center < 0 || med < center_med) {
        center = cand;
        center_med = med;
      }
    }

    Vector sq(static_cast<Index>(members.size()));
    Scalar min_nonzero = std::numeric_limits<Scalar>::infinity();
    Scalar max_dist = 0;
    for (std::size_t l = 0; l < members.size(); ++l) {
      const Scalar r = m(center, members[l]);
      sq[static_cast<Index>(l)] = r * r;
      if (r > 0) min_nonzero = std::min(min_nonzero, r);
      max_dist = std::max(max_dist, r);
    }
    const Vector grid =
        log_spaced_grid(opt.grid_lo_factor * min_nonzero, opt.grid_hi_factor * max_dist,
                        opt.grid_size);
    out.d_hat[i] = zprime_curve(sq, grid).maxCoeff();
  }

  // Neighbor-averaged estimates; the node itself participates in both means.
  for (Index i = 0; i < n; ++i) {
    if (!out.valid[static_cast<std::size_t>(i)]) continue;
    Scalar sum_hat = out.d_hat[i];
    Scalar sum_deg = std::floor(std::log2(static_cast<Scalar>(g.degree(i))));
    Scalar cnt = 1;
    for (Index j : g.neighbors(i)) {
      sum_hat += out.d_hat[j];
      sum_deg += std::floor(std::log2(static_cast<Scalar>(g.degree(j))));
      ++cnt;
    }
    out.d_hat_prime[i] = sum_hat / cnt;
    out.d_tilde_prime[i] = sum_deg / cnt;
    out.d_star[i] = std::max(out.d_hat_prime[i], out.d_tilde_prime[i]);
  }
  return out;
}

namespace {

// Raw per-node estimate from ascending neighbor distances t_1 <= ... <= t_k:
// the inverse mean of log(t_k / t_j) over j < k.
Scalar mle_raw(const std::vector<Scalar>& t) {
  const std::size_t k = t.size();
  Scalar sum = 0;
  for (std::size_t j = 0; j + 1 < k; ++j) sum += std::log(t[k - 1] / t[j]);
  if (!(sum > 0)) return kNan;  // all k distances identical
  return static_cast<Scalar>(k - 1) / sum;
}

Vector mle_smooth(const Vector& raw, const std::vector<std::vector<Index>>& hoods,
                  bool inverse_average) {
  const Index n = raw.size();
  Vector out = Vector::Constant(n, kNan);
  for (Index i = 0; i < n; ++i) {
    Scalar sum = 0;
    Index cnt = 0;
    for (Index j : hoods[static_cast<std::size_t>(i)]) {
      if (std::isnan(raw[j])) continue;
      sum += inverse_average ? 1 / raw[j] : raw[j];
      ++cnt;
    }
    if (cnt == 0) continue;
    const Scalar mean = sum / static_cast<Scalar>(cnt);
    out[i] = inverse_average ? 1 / mean : mean;
  }
  return out;
}

}  // namespace

Vector mle_dimension_knn(const DistanceMatrix& d, int k, const MleOptions& opt) {
  const Index n = d.size();
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (static_cast<Index>(k) > n - 1) throw std::invalid_argument("k exceeds the neighbor count");
  const NeighborOrder order(d);

  Vector raw(n);
  std::vector<std::vector<Index>> hoods(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const auto& row = order.row(i);
    std::vector<Scalar> t(static_cast<std::size_t>(k));
    auto& hood = hoods[static_cast<std::size_t>(i)];
    hood.push_back(i);
    for (int j = 0; j < k; ++j) {
      const Index nb = static_cast<Index>(row[static_cast<std::size_t>(j)]);
      t[static_cast<std::size_t>(j)] = d(i, nb);
      hood.push_back(nb);
    }
    raw[i] = mle_raw(t);
  }
  return mle_smooth(raw, hoods, opt.use_inverse_average);
}

Vector mle_dimension_graph(const DistanceMatrix& d, const NeighborGraph& g,
                           const MleOptions& opt) {
  const Index n = d.size();
  if (g.size() != n) throw std::invalid_argument("graph and distance matrix sizes differ");

  Vector raw = Vector::Constant(n, kNan);
  std::vector<std::vector<Index>> hoods(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    auto& hood = hoods[static_cast<std::size_t>(i)];
    hood.push_back(i);
    for (Index j : g.neighbors(i)) hood.push_back(j);
    if (g.degree(i) < 2) continue;  // needs at least two neighbor distances
    std::vector<Scalar> t;
    t.reserve(static_cast<std::size_t>(g.degree(i)));
    for (Index j : g.neighbors(i)) t.push_back(d(i, j));
    std::sort(t.begin(), t.end());
    raw[i] = mle_raw(t);
  }
  return mle_smooth(raw, hoods, opt.use_inverse_average);
}

}  // namespace ian
