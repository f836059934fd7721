#pragma once

#include <vector>

#include "ian/types.hpp"

namespace ian {

// Undirected simple graph on nodes 0..n-1 with sorted adjacency lists.
class NeighborGraph {
 public:
  NeighborGraph() = default;
  explicit NeighborGraph(Index n) : adj_(static_cast<std::size_t>(n)) {}
  NeighborGraph(Index n, const std::vector<IndexPair>& edges);

  Index size() const { return static_cast<Index>(adj_.size()); }
  Index degree(Index i) const { return static_cast<Index>(adj_[i].size()); }
  Index edge_count() const { return edge_count_; }
  const std::vector<Index>& neighbors(Index i) const { return adj_[i]; }

  bool has_edge(Index i, Index j) const;
  void add_edge(Index i, Index j);     // no-op if already present
  bool remove_edge(Index i, Index j);  // returns false if absent

  // All edges as (i, j) with i < j, in lexicographic order.
  std::vector<IndexPair> edges() const;

  // Component id per node (ids are assigned in order of lowest member).
  std::vector<Index> component_labels(Index* count = nullptr) const;
  Index component_count() const;
  bool connected() const;

  // True if removing (i, j) would disconnect its endpoints.
  bool is_bridge(Index i, Index j) const;

 private:
  std::vector<std::vector<Index>> adj_;
  Index edge_count_ = 0;
};

}  // namespace ian
