#include "ian/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ian/geodesics.hpp"

namespace ian {

namespace {

// Flip so the first entry of largest magnitude is positive.
void fix_sign(Vector& v) {
  Index arg = 0;
  Scalar best = std::abs(v[0]);
  for (Index i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > best) {
      best = std::abs(v[i]);
      arg = i;
    }
  if (v[arg] < 0) v = -v;
}

Scalar signed_pow(Scalar base, Scalar expo) {
  return base < 0 ? -std::pow(-base, expo) : std::pow(base, expo);
}

}  // namespace

EmbeddingResult diffusion_map(const WeightedGraph& gw, int m, Scalar t) {
  const Index n = gw.n;
  if (m < 1) throw std::invalid_argument("need at least one embedding coordinate");
  if (n < 2) throw std::invalid_argument("need at least two nodes");

  EmbeddingResult out;
  Index count = 0;
  out.component = gw.component_labels(&count);
  out.disconnected = count > 1;
  out.coords = Matrix::Zero(n, m);
  out.eigenvalues = Vector::Zero(m);

  // Components embed independently; the reported spectrum comes from the
  // largest one (ties toward the lower label).
  std::vector<Index> comp_size(static_cast<std::size_t>(count), 0);
  for (Index i = 0; i < n; ++i) ++comp_size[static_cast<std::size_t>(out.component[i])];
  Index largest = 0;
  for (Index c = 1; c < count; ++c)
    if (comp_size[static_cast<std::size_t>(c)] > comp_size[static_cast<std::size_t>(largest)])
      largest = c;

  for (Index c = 0; c < count; ++c) {
    std::vector<Index> nodes;
    for (Index i = 0; i < n; ++i)
      if (out.component[i] == c) nodes.push_back(i);
    const Index nc = static_cast<Index>(nodes.size());
    if (nc < 2) continue;
    std::vector<Index> loc(static_cast<std::size_t>(n), -1);
    for (Index l = 0; l < nc; ++l) loc[static_cast<std::size_t>(nodes[l])] = l;

    // Similarity with unit self-weights, then density normalization
    // K = (W + I)_ij / (q_i q_j) with q the row sums of W + I.
    Matrix kmat = Matrix::Zero(nc, nc);
    for (Index l = 0; l < nc; ++l) {
      kmat(l, l) = 1;
      for (const auto& [j, w] : gw.adj[static_cast<std::size_t>(nodes[l])])
        kmat(l, loc[static_cast<std::size_t>(j)]) = w;
    }
    const Vector q = kmat.rowwise().sum();
    for (Index a = 0; a < nc; ++a)
      for (Index b = 0; b < nc; ++b) kmat(a, b) /= q[a] * q[b];
    const Vector dt = kmat.rowwise().sum();
    const Vector dihalf = dt.array().sqrt().inverse();
    Matrix s = dihalf.asDiagonal() * kmat * dihalf.asDiagonal();
    s = 0.5 * (s + s.transpose()).eval();  // exact symmetry for the solver

    const Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");

    // Ascending eigenvalues; the top pair (lambda = 1) is stationary and is
    // dropped.
    const Index avail = std::min<Index>(m, nc - 1);
    for (Index k = 0; k < avail; ++k) {
      const Index idx = nc - 2 - k;
      const Scalar lambda = es.eigenvalues()[idx];
      Vector phi = es.eigenvectors().col(idx);
      fix_sign(phi);
      const Vector coord = signed_pow(lambda, t) * (dihalf.array() * phi.array()).matrix();
      for (Index l = 0; l < nc; ++l) out.coords(nodes[l], k) = coord[l];
      if (c == largest) out.eigenvalues[k] = lambda;
    }
  }
  return out;
}

EmbeddingResult isomap(const NeighborGraph& g, const DistanceMatrix& d, int m) {
  const Index n = g.size();
  if (m < 1) throw std::invalid_argument("need at least one embedding coordinate");
  if (n < 2) throw std::invalid_argument("need at least two nodes");
  if (!g.connected()) throw std::invalid_argument("all-pairs scaling requires a connected graph");

  const Matrix geo = all_pairs_geodesics(g, d);
  const Matrix d2 = geo.array().square();
  const Vector row_mean = d2.rowwise().mean();
  const Scalar grand = row_mean.mean();
  Matrix b(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) b(i, j) = -0.5 * (d2(i, j) - row_mean[i] - row_mean[j] + grand);
  b = 0.5 * (b + b.transpose()).eval();

  const Eigen::SelfAdjointEigenSolver<Matrix> es(b);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");

  EmbeddingResult out;
  out.coords = Matrix::Zero(n, m);
  out.eigenvalues = Vector::Zero(m);
  out.component.assign(static_cast<std::size_t>(n), 0);
  out.disconnected = false;
  for (Index k = 0; k < std::min<Index>(m, n); ++k) {
    const Index idx = n - 1 - k;
    const Scalar lambda = es.eigenvalues()[idx];
    out.eigenvalues[k] = lambda;
    if (lambda <= 0) continue;  // degenerate directions stay zero
    Vector phi = es.eigenvectors().col(idx);
    fix_sign(phi);
    out.coords.col(k) = std::sqrt(lambda) * phi;
  }
  return out;
}

namespace {

// Merge sort counting inversions (pairs left > right).
long long sort_counting(std::vector<Scalar>& v, std::vector<Scalar>& buf, std::size_t lo,
                        std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = (lo + hi) / 2;
  long long inv = sort_counting(v, buf, lo, mid) + sort_counting(v, buf, mid, hi);
  std::size_t a = lo, b = mid, w = lo;
  while (a < mid && b < hi) {
    if (v[b] < v[a]) {
      inv += static_cast<long long>(mid - a);
      buf[w++] = v[b++];
    } else {
      buf[w++] = v[a++];
    }
  }
  while (a < mid) buf[w++] = v[a++];
  while (b < hi) buf[w++] = v[b++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(w),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return inv;
}

}  // namespace

Scalar kendall_tau(const Vector& a, const Vector& b) {
  const Index n = a.size();
  if (b.size() != n) throw std::invalid_argument("rank inputs must have equal length");
  if (n < 2) throw std::invalid_argument("need at least two observations");

  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::sort(idx.begin(), idx.end(), [&](Index i, Index j) {
    if (a[i] != a[j]) return a[i] < a[j];
    return b[i] < b[j];
  });

  // Tie counts: pairs tied in a (t_a), tied in both (t_ab), tied in b (t_b).
  auto pairs = [](long long g) { return g * (g - 1) / 2; };
  long long t_a = 0, t_ab = 0;
  {
    long long run_a = 1, run_ab = 1;
    for (Index i = 1; i < n; ++i) {
      const bool same_a = a[idx[i]] == a[idx[i - 1]];
      const bool same_ab = same_a && b[idx[i]] == b[idx[i - 1]];
      if (same_a) {
        ++run_a;
      } else {
        t_a += pairs(run_a);
        run_a = 1;
      }
      if (same_ab) {
        ++run_ab;
      } else {
        t_ab += pairs(run_ab);
        run_ab = 1;
      }
    }
    t_a += pairs(run_a);
    t_ab += pairs(run_ab);
  }
  long long t_b = 0;
  {
    std::vector<Scalar> bs(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) bs[static_cast<std::size_t>(i)] = b[i];
    std::sort(bs.begin(), bs.end());
    long long run = 1;
    for (Index i = 1; i < n; ++i) {
      if (bs[static_cast<std::size_t>(i)] == bs[static_cast<std::size_t>(i - 1)])
        ++run;
      else {
        t_b += pairs(run);
        run = 1;
      }
    }
    t_b += pairs(run);
  }

  std::vector<Scalar> seq(static_cast<std::size_t>(n)), buf(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) seq[static_cast<std::size_t>(i)] = b[idx[static_cast<std::size_t>(i)]];
  const long long discordant = sort_counting(seq, buf, 0, static_cast<std::size_t>(n));

  const long long n0 = pairs(n);
  if (n0 == t_a || n0 == t_b) throw std::invalid_argument("rank correlation of a constant input");
  const long long num = n0 - t_a - t_b + t_ab - 2 * discordant;
  return static_cast<Scalar>(num) /
         std::sqrt(static_cast<Scalar>(n0 - t_a) * static_cast<Scalar>(n0 - t_b));
}

}  // namespace ian
