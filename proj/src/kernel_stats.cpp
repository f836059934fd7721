#include "ian/kernel_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ian {

namespace {

constexpr Scalar kNan = std::numeric_limits<Scalar>::quiet_NaN();
const Scalar kTwoOverSqrtPi = 2.0 / std::sqrt(3.14159265358979323846);

void check_sigma(const Vector& sigma, Index n) {
  if (sigma.size() != n) throw std::invalid_argument("sigma size must match point count");
  for (Index i = 0; i < n; ++i)
    if (!(sigma[i] > 0) || !std::isfinite(sigma[i]))
      throw std::invalid_argument("scales must be positive and finite");
}

}  // namespace

Index WeightedGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& row : adj) total += row.size();
  return static_cast<Index>(total / 2);
}

Scalar WeightedGraph::weight(Index i, Index j) const {
  const auto& row = adj[static_cast<std::size_t>(i)];
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const std::pair<Index, Scalar>& e, Index v) { return e.first < v; });
  return (it != row.end() && it->first == j) ? it->second : 0;
}

std::vector<Index> WeightedGraph::component_labels(Index* count) const {
  std::vector<Index> label(static_cast<std::size_t>(n), -1);
  std::vector<Index> stack;
  Index components = 0;
  for (Index start = 0; start < n; ++start) {
    if (label[static_cast<std::size_t>(start)] != -1) continue;
    label[static_cast<std::size_t>(start)] = components;
    stack.push_back(start);
    while (!stack.empty()) {
      const Index v = stack.back();
      stack.pop_back();
      for (const auto& [w, wt] : adj[static_cast<std::size_t>(v)]) {
        (void)wt;
        if (label[static_cast<std::size_t>(w)] == -1) {
          label[static_cast<std::size_t>(w)] = components;
          stack.push_back(w);
        }
      }
    }
    ++components;
  }
  if (count) *count = components;
  return label;
}

Index WeightedGraph::component_count() const {
  Index count = 0;
  component_labels(&count);
  return count;
}

WeightedGraph multiscale_kernel(const DistanceMatrix& d, const Vector& sigma, Scalar cutoff) {
  const Index n = d.size();
  check_sigma(sigma, n);
  WeightedGraph gw;
  gw.n = n;
  gw.adj.resize(static_cast<std::size_t>(n));
  const Matrix& m = d.matrix();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const Scalar w = std::exp(-m(i, j) * m(i, j) / (sigma[i] * sigma[j]));
      if (w >= cutoff) {
        gw.adj[static_cast<std::size_t>(i)].push_back({j, w});
        gw.adj[static_cast<std::size_t>(j)].push_back({i, w});
      }
    }
  return gw;
}

VolumeRatioStats volume_ratios(const DistanceMatrix& d, const NeighborGraph& g,
                               const Vector& sigma, Scalar cutoff) {
  const Index n = d.size();
  if (g.size() != n) throw std::invalid_argument("graph and distance matrix sizes differ");
  check_sigma(sigma, n);

  VolumeRatioStats out;
  out.delta.setConstant(n, kNan);
  out.delta_prime.setConstant(n, kNan);
  out.delta_prime_ms.setConstant(n, kNan);
  out.d_tilde.setConstant(n, kNan);
  out.valid.assign(static_cast<std::size_t>(n), 0);

  const ArrayX sig = sigma.array();
  for (Index i = 0; i < n; ++i) {
    const Index deg = g.degree(i);
    if (deg == 0) continue;
    out.valid[static_cast<std::size_t>(i)] = 1;

    const ArrayX r2 = d.matrix().row(i).transpose().array().square();
    // Single-scale and multiscale Gaussian sums over every other node; the
    // self term is exactly 1 in both and is subtracted after masking.
    ArrayX w = (-r2 / (sigma[i] * sigma[i])).exp();
    w = (w >= cutoff).select(w, 0);
    ArrayX wms = (-r2 / (sigma[i] * sig)).exp();
    wms = (wms >= cutoff).select(wms, 0);

    const Scalar dtilde = std::log2(static_cast<Scalar>(std::max<Index>(2, deg)));
    const Scalar factor = std::pow(kTwoOverSqrtPi, dtilde);
    const Scalar delta = (w.sum() - 1) / static_cast<Scalar>(deg);
    const Scalar delta_ms = (wms.sum() - 1) / static_cast<Scalar>(deg);
    out.delta[i] = delta;
    out.delta_prime[i] = delta * factor;
    out.delta_prime_ms[i] = delta_ms * factor;
    out.d_tilde[i] = dtilde;
  }
  return out;
}

std::vector<Scalar> VolumeRatioStats::valid_values(bool multiscale) const {
  std::vector<Scalar> vals;
  const Vector& src = multiscale ? delta_prime_ms : delta_prime;
  for (Index i = 0; i < src.size(); ++i)
    if (valid[static_cast<std::size_t>(i)]) vals.push_back(src[i]);
  return vals;
}

Scalar quantile(std::vector<Scalar> values, Scalar p) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty set");
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const Scalar h = p * static_cast<Scalar>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= values.size()) return values.back();
  const Scalar frac = h - static_cast<Scalar>(lo);
  return values[lo] + (values[lo + 1] - values[lo]) * frac;
}

Scalar inverse_normal_cdf(Scalar p) {
  // Wichura's algorithm AS 241, rational approximations accurate to ~1e-16.
  if (!(p > 0 && p < 1)) throw std::invalid_argument("probability must lie strictly in (0, 1)");
  const Scalar q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const Scalar r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) *
                    r +
                4.5921953931549871457e4) *
                   r +
               1.3731693765509461125e4) *
                  r +
              1.9715909503065514427e3) *
                 r +
             1.3314166789178437745e2) *
                r +
            3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) *
                    r +
                2.1213794301586595867e4) *
                   r +
               5.3941960214247511077e3) *
                  r +
              6.8718700749205790830e2) *
                 r +
             4.2313330701600911252e1) *
                r +
            1.0);
  }
  Scalar r = q < 0 ? p : 1 - p;
  r = std::sqrt(-std::log(r));
  Scalar x;
  if (r <= 5) {
    r -= 1.6;
    x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) *
                 r +
             1.27045825245236838258e0) *
                r +
            3.64784832476320460504e0) *
               r +
           5.76949722146069140550e0) *
              r +
          4.63033784615654529590e0) *
             r +
         1.42343711074968357734e0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) *
                 r +
             1.48103976427480074590e-1) *
                r +
            6.89767334985100004550e-1) *
               r +
           1.67638483018380384940e0) *
              r +
          2.05319162663775882187e0) *
             r +
         1.0);
  } else {
    r -= 5;
    x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) *
                 r +
             2.65321895265761230930e-2) *
                r +
            2.96560571828504891230e-1) *
               r +
           1.78482653991729133580e0) *
              r +
          5.46378491116411436990e0) *
             r +
         6.65790464350110377720e0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) *
                 r +
             7.86869131145613259100e-4) *
                r +
            1.48753612908506148525e-2) *
               r +
           1.36929880922735805310e-1) *
              r +
          5.99832206555887937690e-1) *
             r +
         1.0);
  }
  return q < 0 ? -x : x;
}

OutlierThreshold outlier_threshold(const std::vector<Scalar>& values, Scalar multiplier) {
  if (values.empty()) throw std::invalid_argument("threshold of an empty population");
  OutlierThreshold t;
  t.q1 = quantile(values, 0.25);
  t.median = quantile(values, 0.5);
  t.q3 = quantile(values, 0.75);
  t.mean = (t.q1 + t.median + t.q3) / 3;
  if (t.q3 > t.q1) {
    const Scalar nn = static_cast<Scalar>(values.size());
    const Scalar eta = 2 * inverse_normal_cdf((0.75 * nn - 0.125) / (nn + 0.25));
    t.stddev = (t.q3 - t.q1) / eta;
  } else {
    t.stddev = 0;
  }
  t.threshold = t.mean + multiplier * t.stddev;
  return t;
}

std::vector<Scalar> default_c_grid() {
  std::vector<Scalar> grid;
  grid.reserve(141);
  for (int k = 0; k <= 140; ++k) grid.push_back(static_cast<Scalar>(60 + k) / 200.0);
  return grid;
}

TuneResult tune_c(const DistanceMatrix& d, const NeighborGraph& g, const TuneOptions& opt) {
  if (g.edge_count() == 0) throw std::invalid_argument("cannot tune on an edgeless graph");
  const std::vector<Scalar> grid = opt.grid.empty() ? default_c_grid() : opt.grid;

  auto scales_at = [&](Scalar c) {
    if (opt.use_greedy) return greedy_scales(d, g, c, opt.covering);
    return solve_scales(build_constraints(d, g, c, opt.covering), opt.simplex);
  };

  TuneResult out;
  Scalar best_score = std::numeric_limits<Scalar>::infinity();
  for (const Scalar c : grid) {
    const ScaleVector scales = scales_at(c);
    const VolumeRatioStats stats = volume_ratios(d, g, scales.sigma, opt.cutoff);
    const Scalar med = quantile(stats.valid_values(false), 0.5);
    out.curve.push_back({c, med});
    const Scalar score = std::abs(med - 1);
    if (score <= best_score) {  // ties go to the later (larger) c
      best_score = score;
      out.c_star = c;
    }
  }
  // Standalone re-solve so the returned scales cannot depend on sweep order.
  out.scales = scales_at(out.c_star);
  out.stats = volume_ratios(d, g, out.scales.sigma, opt.cutoff);
  return out;
}

Vector kernel_field_sum(const Matrix& points, const Vector& sigma, const Matrix& queries) {
  const Index n = points.rows();
  check_sigma(sigma, n);
  if (queries.cols() != points.cols())
    throw std::invalid_argument("query dimension must match point dimension");
  Vector field(queries.rows());
  const ArrayX inv_s2 = sigma.array().square().inverse();
  for (Index q = 0; q < queries.rows(); ++q) {
    const ArrayX sq = (points.rowwise() - queries.row(q)).rowwise().squaredNorm().array();
    field[q] = (-sq * inv_s2).exp().sum();
  }
  return field;
}

}  // namespace ian
