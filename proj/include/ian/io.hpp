#pragma once

#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ian/distance_matrix.hpp"
#include "ian/kernel_stats.hpp"
#include "ian/neighbor_graph.hpp"
#include "ian/point_cloud.hpp"
#include "ian/types.hpp"

namespace ian {

// Raised for unreadable, unwritable, or malformed files; messages carry the
// path and, for parse failures, the line number.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All writers print floating-point values with "%.17g" so doubles round-trip
// exactly, making repeated runs byte-identical.

// Comma-separated numeric matrix. With header=true the first line is
// "c0,c1,..." on write and is skipped on read. Rows must be equal length.
Matrix read_matrix_csv(const std::string& path, bool header = false);
void write_matrix_csv(const std::string& path, const Matrix& m, bool header = false);

// Coordinates as CSV plus a JSON sidecar at <path>.json holding kind, seed,
// effective parameters, labels, positions, and aux rows. read_point_cloud
// restores the sidecar when present.
void write_point_cloud(const std::string& path, const PointCloud& pc, bool header = false);
PointCloud read_point_cloud(const std::string& path, bool header = false);

// Graph edges as tab-separated "i, j, length" with i < j in lexicographic
// order.
struct EdgeList {
  Index n = 0;
  std::vector<std::tuple<Index, Index, Scalar>> edges;

  NeighborGraph graph() const;
  std::vector<Scalar> lengths() const;  // parallel to graph().edges()
};

void write_edge_tsv(const std::string& path, const NeighborGraph& g, const DistanceMatrix& d);
// n = -1 infers max index + 1.
EdgeList read_edge_tsv(const std::string& path, Index n = -1);

// Sparse weights as tab-separated "i, j, w" with i < j.
void write_weights_tsv(const std::string& path, const WeightedGraph& gw);
WeightedGraph read_weights_tsv(const std::string& path, Index n = -1);

// Named per-node columns under a "node,<names...>" header.
void write_table_csv(const std::string& path, const std::vector<std::string>& names,
                     const std::vector<Vector>& columns);
// Returns the columns (in file order) and fills names when non-null.
std::vector<Vector> read_table_csv(const std::string& path,
                                   std::vector<std::string>* names = nullptr);

// Minimal scatter plot for 2-D data; edges drawn beneath points, points
// colored by `values` when given (empty = flat color).
void write_svg_scatter(const std::string& path, const Matrix& pts2d,
                       const std::vector<IndexPair>& edges, const Vector& values = Vector());

}  // namespace ian
