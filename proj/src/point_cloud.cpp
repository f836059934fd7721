#include "ian/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "ian/rng.hpp"

namespace ian {

namespace {

constexpr Scalar kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_params(const DatasetSpec& spec, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : spec.params) {
    (void)value;
    if (!allowed.count(key))
      fail("unknown parameter '" + key + "' for dataset kind '" + to_string(spec.kind) + "'");
  }
}

Scalar need_positive(const DatasetSpec& spec, const std::string& key, Scalar fallback) {
  Scalar v = spec.param(key, fallback);
  if (!(v > 0)) fail("parameter '" + key + "' must be positive");
  return v;
}

Index need_count(const DatasetSpec& spec, const std::string& key, Scalar fallback,
                 Index minimum = 1) {
  Scalar v = spec.param(key, fallback);
  Index n = static_cast<Index>(v);
  if (v != static_cast<Scalar>(n) || n < minimum)
    fail("parameter '" + key + "' must be an integer >= " + std::to_string(minimum));
  return n;
}

// Square or triangular lattices share the interior labeling convention:
// a point is interior when its lattice indices are at least `margin` cells
// away from every face.
void label_interior(PointCloud& pc, const std::vector<std::vector<Index>>& idx,
                    const std::vector<Index>& sides, Index margin) {
  pc.labels.resize(pc.size());
  for (Index p = 0; p < pc.size(); ++p) {
    bool interior = true;
    for (std::size_t k = 0; k < sides.size(); ++k)
      if (idx[p][k] < margin || idx[p][k] > sides[k] - 1 - margin) interior = false;
    pc.labels[p] = interior ? "interior" : "boundary";
  }
}

PointCloud make_grid(const DatasetSpec& spec, std::uint64_t seed, bool jittered) {
  if (jittered)
    check_params(spec, {"dim", "n", "side", "spacing", "jitter"});
  else
    check_params(spec, {"dim", "n", "side", "spacing", "lattice"});
  Index dim = need_count(spec, "dim", jittered ? 2 : 1);
  Scalar spacing = need_positive(spec, "spacing", 1.0);
  Index lattice = jittered ? 0 : need_count(spec, "lattice", 0, 0);
  if (lattice != 0 && lattice != 1) fail("parameter 'lattice' must be 0 (square) or 1 (triangular)");
  if (lattice == 1 && dim != 2) fail("triangular lattice requires dim = 2");
  if (dim < 1 || dim > 6) fail("parameter 'dim' must lie in [1, 6]");

  std::vector<Index> sides(dim);
  if (dim == 1) {
    sides[0] = need_count(spec, "n", 100, 2);
  } else {
    Index side = need_count(spec, "side", 10, 2);
    for (Index k = 0; k < dim; ++k) sides[k] = side;
  }
  Index total = 1;
  for (Index s : sides) total *= s;

  PointCloud pc;
  pc.points.resize(total, dim == 1 ? 1 : (lattice == 1 ? 2 : dim));
  std::vector<std::vector<Index>> idx(total, std::vector<Index>(dim, 0));
  std::vector<Index> cur(dim, 0);
  const Scalar row_height = spacing * std::sqrt(3.0) / 2.0;
  for (Index p = 0; p < total; ++p) {
    idx[p] = cur;
    if (lattice == 1) {
      // cur[0] = row, cur[1] = column; odd rows shift half a step
      pc.points(p, 0) = (static_cast<Scalar>(cur[1]) + 0.5 * static_cast<Scalar>(cur[0] % 2)) * spacing;
      pc.points(p, 1) = static_cast<Scalar>(cur[0]) * row_height;
    } else {
      for (Index k = 0; k < dim; ++k) pc.points(p, k) = static_cast<Scalar>(cur[k]) * spacing;
    }
    for (Index k = dim - 1; k >= 0; --k) {
      if (++cur[k] < sides[k]) break;
      cur[k] = 0;
    }
  }

  if (jittered) {
    Scalar jitter = spec.param("jitter", 0.5);
    if (jitter < 0) fail("parameter 'jitter' must be non-negative");
    Rng rng(seed);
    for (Index p = 0; p < total; ++p)
      for (Index k = 0; k < pc.points.cols(); ++k)
        pc.points(p, k) += jitter * spacing * rng.normal();
    label_interior(pc, idx, sides, 2);
  } else {
    label_interior(pc, idx, sides, 1);
  }
  return pc;
}

PointCloud make_ball(const DatasetSpec& spec, std::uint64_t seed) {
  check_params(spec, {"dim", "n", "radius"});
  Index dim = need_count(spec, "dim", 2);
  if (dim < 1 || dim > 16) fail("parameter 'dim' must lie in [1, 16]");
  Index n = need_count(spec, "n", 300, 1);
  Scalar radius = need_positive(spec, "radius", 1.0);

  PointCloud pc;
  pc.points.resize(n, dim);
  pc.labels.resize(n);
  Rng rng(seed);
  for (Index p = 0; p < n; ++p) {
    Scalar norm = 0;
    do {
      norm = 0;
      for (Index k = 0; k < dim; ++k) {
        Scalar v = rng.normal();
        pc.points(p, k) = v;
        norm += v * v;
      }
      norm = std::sqrt(norm);
    } while (norm < 1e-12);
    Scalar r = radius * std::pow(rng.uniform01(), 1.0 / static_cast<Scalar>(dim));
    pc.points.row(p) *= r / norm;
    pc.labels[p] = r <= 0.9 * radius ? "interior" : "boundary";
  }
  return pc;
}

PointCloud make_stingray(const DatasetSpec& spec, std::uint64_t seed) {
  check_params(spec, {"spacing", "tail_length", "delete_frac", "arc_radius"});
  Scalar h = need_positive(spec, "spacing", 0.1);
  Scalar tail_length = need_positive(spec, "tail_length", 3.0);
  Scalar delete_frac = spec.param("delete_frac", 0.2);
  if (delete_frac < 0 || delete_frac > 0.9) fail("parameter 'delete_frac' must lie in [0, 0.9]");
  Scalar arc_radius = need_positive(spec, "arc_radius", 3.0);

  Rng rng(seed);
  std::vector<Scalar> xs, ys, pos;
  std::vector<std::string> labels;
  // Body: unit disc sampled uniformly at random, one point per h^2 of area.
  Index body_count = static_cast<Index>(std::llround(kPi / (h * h)));
  for (Index i = 0; i < body_count; ++i) {
    Scalar r = std::sqrt(rng.uniform01());
    Scalar phi = rng.uniform(0, 2 * kPi);
    xs.push_back(r * std::cos(phi));
    ys.push_back(r * std::sin(phi));
    pos.push_back(0);
    labels.push_back("body");
  }
  // Tail: circular arc leaving (1, 0) tangent to the x-axis, sampled at the
  // matching linear density; position stores the arc length past the rim.
  Index tail_count = static_cast<Index>(std::floor(tail_length / h + 1e-9));
  for (Index k = 1; k <= tail_count; ++k) {
    Scalar s = static_cast<Scalar>(k) * h;
    Scalar a = s / arc_radius;
    xs.push_back(1.0 + arc_radius * std::sin(a));
    ys.push_back(arc_radius * (1.0 - std::cos(a)));
    pos.push_back(s);
    labels.push_back("tail");
  }

  Index total = static_cast<Index>(xs.size());
  Index removed = static_cast<Index>(std::floor(delete_frac * static_cast<Scalar>(total)));
  std::vector<Index> order(total);
  std::iota(order.begin(), order.end(), Index{0});
  for (Index t = 0; t < removed; ++t)
    std::swap(order[t], order[t + static_cast<Index>(rng.below(static_cast<std::uint64_t>(total - t)))]);
  std::vector<char> keep(total, 1);
  for (Index t = 0; t < removed; ++t) keep[order[t]] = 0;

  Index n = total - removed;
  PointCloud pc;
  pc.points.resize(n, 2);
  pc.position.resize(n);
  pc.labels.resize(n);
  Index w = 0;
  for (Index p = 0; p < total; ++p) {
    if (!keep[p]) continue;
    pc.points(w, 0) = xs[p];
    pc.points(w, 1) = ys[p];
    pc.position[w] = pos[p];
    pc.labels[w] = labels[p];
    ++w;
  }
  return pc;
}

// Arc length of the Archimedean spiral r = a * theta from the origin.
Scalar spiral_arclen(Scalar a, Scalar theta) {
  return 0.5 * a * (theta * std::sqrt(1 + theta * theta) + std::asinh(theta));
}

PointCloud make_spiral(const DatasetSpec& spec, std::uint64_t seed) {
  check_params(spec, {"n", "a", "theta0", "turns", "jitter"});
  Index n = need_count(spec, "n", 300, 2);
  Scalar a = need_positive(spec, "a", 0.35);
  Scalar theta0 = need_positive(spec, "theta0", 1.5 * kPi);
  Scalar turns = need_positive(spec, "turns", 0.9);
  Scalar jitter = spec.param("jitter", 0.35);
  if (jitter < 0 || jitter >= 1) fail("parameter 'jitter' must lie in [0, 1)");

  Scalar s0 = spiral_arclen(a, theta0);
  Scalar s1 = spiral_arclen(a, theta0 + turns * 2 * kPi);
  Scalar h = (s1 - s0) / static_cast<Scalar>(n - 1);

  // Stratified sampling in arc length: one point per cell of width h, moved
  // uniformly within a jitter*h window. Keeps points ordered along the curve
  // while breaking the exact regularity of the spacing.
  Rng rng(seed);
  PointCloud pc;
  pc.points.resize(n, 2);
  pc.position.resize(n);
  Scalar theta = theta0;
  for (Index k = 0; k < n; ++k) {
    Scalar u = jitter > 0 ? jitter * (rng.uniform01() - 0.5) : 0.0;
    Scalar target = s0 + (static_cast<Scalar>(k) + u) * h;
    for (int it = 0; it < 100; ++it) {
      Scalar step = (spiral_arclen(a, theta) - target) / (a * std::sqrt(1 + theta * theta));
      theta -= step;
      if (std::abs(step) < 1e-14 * (1 + theta)) break;
    }
    pc.points(k, 0) = a * theta * std::cos(theta);
    pc.points(k, 1) = a * theta * std::sin(theta);
    pc.position[k] = target - s0;
  }
  return pc;
}

PointCloud make_bent_plane(const DatasetSpec& spec, std::uint64_t) {
  check_params(spec, {"length", "width", "spacing"});
  Scalar length = need_positive(spec, "length", 4.0);
  Scalar width = need_positive(spec, "width", 2.0);
  Scalar h = need_positive(spec, "spacing", 0.15);
  Index ns = static_cast<Index>(std::floor(length / h + 1e-9)) + 1;
  Index nz = static_cast<Index>(std::floor(width / h + 1e-9)) + 1;
  if (ns < 2 || nz < 2) fail("bent_plane needs at least two samples per side");

  // Unit-speed catenary x = asinh(s), y = sqrt(1 + s^2), extruded along z.
  // (s, z) is an exact isometric flattening, stored in aux.
  PointCloud pc;
  Index n = ns * nz;
  pc.points.resize(n, 3);
  pc.aux.resize(n, 2);
  pc.labels.resize(n);
  Index p = 0;
  for (Index i = 0; i < ns; ++i)
    for (Index j = 0; j < nz; ++j, ++p) {
      Scalar s = -0.5 * length + static_cast<Scalar>(i) * h;
      Scalar z = static_cast<Scalar>(j) * h;
      pc.points(p, 0) = std::asinh(s);
      pc.points(p, 1) = std::sqrt(1 + s * s);
      pc.points(p, 2) = z;
      pc.aux(p, 0) = s;
      pc.aux(p, 1) = z;
      pc.labels[p] = (i > 0 && i < ns - 1 && j > 0 && j < nz - 1) ? "interior" : "boundary";
    }
  return pc;
}

PointCloud make_cylinder5d(const DatasetSpec& spec, std::uint64_t seed) {
  check_params(spec, {"n", "length", "radius"});
  Index n = need_count(spec, "n", 8403, 1);
  Scalar length = need_positive(spec, "length", 3.0);
  Scalar radius = need_positive(spec, "radius", 1.0);

  // R^1 x S^4 in R^6: uniform axis coordinate, uniform direction on the
  // 4-sphere via normalized Gaussians.
  PointCloud pc;
  pc.points.resize(n, 6);
  pc.position.resize(n);
  Rng rng(seed);
  for (Index p = 0; p < n; ++p) {
    Scalar t = rng.uniform(0, length);
    Scalar dir[5];
    Scalar norm = 0;
    do {
      norm = 0;
      for (int k = 0; k < 5; ++k) {
        dir[k] = rng.normal();
        norm += dir[k] * dir[k];
      }
      norm = std::sqrt(norm);
    } while (norm < 1e-9);
    pc.points(p, 0) = t;
    for (int k = 0; k < 5; ++k) pc.points(p, k + 1) = radius * dir[k] / norm;
    pc.position[p] = t;
  }
  return pc;
}

PointCloud make_gauss_clusters(const DatasetSpec& spec, std::uint64_t seed) {
  check_params(spec, {"n", "k", "sep", "std"});
  Index n = need_count(spec, "n", 120, 1);
  Index k = need_count(spec, "k", 3, 1);
  if (n < k) fail("gauss_clusters needs n >= k");
  Scalar sep = need_positive(spec, "sep", 6.0);
  Scalar base_std = need_positive(spec, "std", 0.4);

  // Cluster centers on a regular k-gon with side length sep; spreads grow
  // with the cluster index so densities differ.
  Scalar circum = k == 1 ? 0.0 : sep / (2 * std::sin(kPi / static_cast<Scalar>(k)));
  PointCloud pc;
  pc.points.resize(n, 2);
  pc.labels.resize(n);
  Rng rng(seed);
  Index p = 0;
  for (Index c = 0; c < k; ++c) {
    Index count = n / k + (c < n % k ? 1 : 0);
    Scalar phi = 2 * kPi * static_cast<Scalar>(c) / static_cast<Scalar>(k);
    Scalar cx = circum * std::cos(phi), cy = circum * std::sin(phi);
    Scalar sd = base_std * (1 + 0.5 * static_cast<Scalar>(c));
    for (Index q = 0; q < count; ++q, ++p) {
      pc.points(p, 0) = cx + sd * rng.normal();
      pc.points(p, 1) = cy + sd * rng.normal();
      pc.labels[p] = std::to_string(c);
    }
  }
  return pc;
}

PointCloud make_swiss_cheese(const DatasetSpec& spec, std::uint64_t seed) {
  check_params(spec, {"n", "holes", "hole_radius"});
  Index n = need_count(spec, "n", 800, 1);
  Index holes = need_count(spec, "holes", 5, 0);
  Scalar r = need_positive(spec, "hole_radius", 0.12);
  Scalar margin = r + 0.02;
  if (holes > 0 && 2 * margin >= 1.0) fail("hole_radius too large for the unit square");

  Rng rng(seed);
  Matrix centers(holes, 2);
  for (Index hIdx = 0; hIdx < holes; ++hIdx) {
    bool placed = false;
    for (int attempt = 0; attempt < 20000 && !placed; ++attempt) {
      Scalar cx = rng.uniform(margin, 1 - margin), cy = rng.uniform(margin, 1 - margin);
      placed = true;
      for (Index q = 0; q < hIdx; ++q) {
        Scalar dx = cx - centers(q, 0), dy = cy - centers(q, 1);
        if (std::sqrt(dx * dx + dy * dy) < 2 * r + 0.04) {
          placed = false;
          break;
        }
      }
      if (placed) {
        centers(hIdx, 0) = cx;
        centers(hIdx, 1) = cy;
      }
    }
    if (!placed) fail("could not place non-overlapping holes; reduce 'holes' or 'hole_radius'");
  }

  PointCloud pc;
  pc.points.resize(n, 2);
  Index accepted = 0;
  long attempts = 0, cap = 1000L * static_cast<long>(n) + 1000;
  while (accepted < n) {
    if (++attempts > cap) fail("rejection sampling failed; holes cover too much area");
    Scalar x = rng.uniform01(), y = rng.uniform01();
    bool inside_hole = false;
    for (Index hIdx = 0; hIdx < holes; ++hIdx) {
      Scalar dx = x - centers(hIdx, 0), dy = y - centers(hIdx, 1);
      if (dx * dx + dy * dy < r * r) {
        inside_hole = true;
        break;
      }
    }
    if (inside_hole) continue;
    pc.points(accepted, 0) = x;
    pc.points(accepted, 1) = y;
    ++accepted;
  }
  pc.aux.resize(holes, 3);
  for (Index hIdx = 0; hIdx < holes; ++hIdx) {
    pc.aux(hIdx, 0) = centers(hIdx, 0);
    pc.aux(hIdx, 1) = centers(hIdx, 1);
    pc.aux(hIdx, 2) = r;
  }
  return pc;
}

PointCloud make_horseshoe(const DatasetSpec& spec, std::uint64_t seed) {
  check_params(spec, {"spacing", "mid_radius", "half_width", "span_deg", "jitter"});
  Scalar h = need_positive(spec, "spacing", 0.1);
  Scalar mid = need_positive(spec, "mid_radius", 1.0);
  Scalar hw = need_positive(spec, "half_width", 0.18);
  Scalar span_deg = need_positive(spec, "span_deg", 300.0);
  Scalar jitter = spec.param("jitter", 0.25);
  if (jitter < 0) fail("parameter 'jitter' must be non-negative");
  if (span_deg > 360) fail("parameter 'span_deg' must be at most 360");
  if (hw >= mid) fail("half_width must be smaller than mid_radius");

  // Annular band spanning span_deg degrees (gap at the bottom), sampled on a
  // (radius, angle) lattice with roughly uniform spacing, lightly jittered.
  Index nr = static_cast<Index>(std::floor(2 * hw / h + 1e-9)) + 1;
  Scalar r_start = mid - 0.5 * h * static_cast<Scalar>(nr - 1);
  Scalar span = span_deg * kPi / 180.0;
  Scalar dphi = h / mid;
  Index na = static_cast<Index>(std::floor(span / dphi + 1e-9)) + 1;

  PointCloud pc;
  pc.points.resize(nr * na, 2);
  Rng rng(seed);
  Index p = 0;
  for (Index l = 0; l < nr; ++l)
    for (Index m = 0; m < na; ++m, ++p) {
      Scalar r = r_start + static_cast<Scalar>(l) * h;
      Scalar phi = kPi / 2 - span / 2 + static_cast<Scalar>(m) * dphi;
      pc.points(p, 0) = r * std::cos(phi) + jitter * h * rng.normal();
      pc.points(p, 1) = r * std::sin(phi) + jitter * h * rng.normal();
    }
  return pc;
}

}  // namespace

DatasetKind dataset_kind_from_string(const std::string& name) {
  if (name == "grid") return DatasetKind::grid;
  if (name == "jittered_grid") return DatasetKind::jittered_grid;
  if (name == "stingray") return DatasetKind::stingray;
  if (name == "spiral") return DatasetKind::spiral;
  if (name == "bent_plane") return DatasetKind::bent_plane;
  if (name == "cylinder5d") return DatasetKind::cylinder5d;
  if (name == "gauss_clusters") return DatasetKind::gauss_clusters;
  if (name == "swiss_cheese") return DatasetKind::swiss_cheese;
  if (name == "horseshoe") return DatasetKind::horseshoe;
  if (name == "ball") return DatasetKind::ball;
  fail("unknown dataset kind '" + name + "'");
}

std::string to_string(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::grid: return "grid";
    case DatasetKind::jittered_grid: return "jittered_grid";
    case DatasetKind::stingray: return "stingray";
    case DatasetKind::spiral: return "spiral";
    case DatasetKind::bent_plane: return "bent_plane";
    case DatasetKind::cylinder5d: return "cylinder5d";
    case DatasetKind::gauss_clusters: return "gauss_clusters";
    case DatasetKind::swiss_cheese: return "swiss_cheese";
    case DatasetKind::horseshoe: return "horseshoe";
    case DatasetKind::ball: return "ball";
  }
  fail("invalid dataset kind");
}

void require_distinct_rows(const Matrix& points) {
  Index n = points.rows();
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  auto row_less = [&](Index a, Index b) {
    for (Index k = 0; k < points.cols(); ++k) {
      if (points(a, k) < points(b, k)) return true;
      if (points(a, k) > points(b, k)) return false;
    }
    return false;
  };
  std::sort(order.begin(), order.end(), row_less);
  for (Index p = 1; p < n; ++p)
    if (!row_less(order[p - 1], order[p]) && !row_less(order[p], order[p - 1]))
      fail("duplicate points at rows " + std::to_string(order[p - 1]) + " and " +
           std::to_string(order[p]));
}

PointCloud generate(const DatasetSpec& spec, std::uint64_t seed) {
  PointCloud pc;
  switch (spec.kind) {
    case DatasetKind::grid: pc = make_grid(spec, seed, false); break;
    case DatasetKind::jittered_grid: pc = make_grid(spec, seed, true); break;
    case DatasetKind::stingray: pc = make_stingray(spec, seed); break;
    case DatasetKind::spiral: pc = make_spiral(spec, seed); break;
    case DatasetKind::bent_plane: pc = make_bent_plane(spec, seed); break;
    case DatasetKind::cylinder5d: pc = make_cylinder5d(spec, seed); break;
    case DatasetKind::gauss_clusters: pc = make_gauss_clusters(spec, seed); break;
    case DatasetKind::swiss_cheese: pc = make_swiss_cheese(spec, seed); break;
    case DatasetKind::horseshoe: pc = make_horseshoe(spec, seed); break;
    case DatasetKind::ball: pc = make_ball(spec, seed); break;
  }
  pc.kind = to_string(spec.kind);
  pc.seed = seed;
  pc.params = spec.params;
  require_distinct_rows(pc.points);
  return pc;
}

}  // namespace ian
