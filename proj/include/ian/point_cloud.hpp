#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ian/types.hpp"

namespace ian {

enum class DatasetKind {
  grid,
  jittered_grid,
  stingray,
  spiral,
  bent_plane,
  cylinder5d,
  gauss_clusters,
  swiss_cheese,
  horseshoe,
  ball,
};

// Throws std::invalid_argument for unknown names.
DatasetKind dataset_kind_from_string(const std::string& name);
std::string to_string(DatasetKind kind);

// Kind plus kind-specific numeric parameters. Unknown parameter names are
// rejected by generate(); missing ones take documented defaults.
struct DatasetSpec {
  DatasetKind kind = DatasetKind::grid;
  std::map<std::string, Scalar> params;

  Scalar param(const std::string& key, Scalar fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

// A generated or loaded point set, with optional per-point annotations:
//   labels:   "interior"/"boundary" (grid, jittered_grid, ball, bent_plane),
//             "body"/"tail" (stingray), cluster id (gauss_clusters)
//   position: intrinsic coordinate where one exists (arc length for curves,
//             axis coordinate for the cylinder, tail arc length for the
//             stingray with 0 on the body)
//   aux:      kind-specific matrix (swiss_cheese: one hole per row as
//             (cx, cy, r); bent_plane: per-point isometric flattening (s, z))
struct PointCloud {
  Matrix points;
  std::vector<std::string> labels;
  Vector position;
  Matrix aux;
  std::string kind;
  std::uint64_t seed = 0;
  std::map<std::string, Scalar> params;  // effective parameters after defaults

  Index size() const { return points.rows(); }
  Index dim() const { return points.cols(); }
};

// Deterministic generation: the same (spec, seed) always produces the same
// cloud, byte for byte. Throws std::invalid_argument on unknown or invalid
// parameters.
PointCloud generate(const DatasetSpec& spec, std::uint64_t seed);

// Throws std::invalid_argument if two rows are exactly identical.
void require_distinct_rows(const Matrix& points);

}  // namespace ian
