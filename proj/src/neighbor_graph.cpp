#include "ian/neighbor_graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace ian {

NeighborGraph::NeighborGraph(Index n, const std::vector<IndexPair>& edges)
    : adj_(static_cast<std::size_t>(n)) {
  for (const auto& [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("edge index out of range");
    add_edge(i, j);
  }
}

bool NeighborGraph::has_edge(Index i, Index j) const {
  const auto& row = adj_[static_cast<std::size_t>(i)];
  return std::binary_search(row.begin(), row.end(), j);
}

void NeighborGraph::add_edge(Index i, Index j) {
  if (i == j) throw std::invalid_argument("self loops are not allowed");
  auto insert_sorted = [](std::vector<Index>& row, Index v) {
    auto it = std::lower_bound(row.begin(), row.end(), v);
    if (it != row.end() && *it == v) return false;
    row.insert(it, v);
    return true;
  };
  const bool added = insert_sorted(adj_[static_cast<std::size_t>(i)], j);
  insert_sorted(adj_[static_cast<std::size_t>(j)], i);
  if (added) ++edge_count_;
}

bool NeighborGraph::remove_edge(Index i, Index j) {
  auto erase_sorted = [](std::vector<Index>& row, Index v) {
    auto it = std::lower_bound(row.begin(), row.end(), v);
    if (it == row.end() || *it != v) return false;
    row.erase(it);
    return true;
  };
  const bool removed = erase_sorted(adj_[static_cast<std::size_t>(i)], j);
  erase_sorted(adj_[static_cast<std::size_t>(j)], i);
  if (removed) --edge_count_;
  return removed;
}

std::vector<IndexPair> NeighborGraph::edges() const {
  std::vector<IndexPair> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (Index i = 0; i < size(); ++i)
    for (Index j : adj_[static_cast<std::size_t>(i)])
      if (j > i) out.emplace_back(i, j);
  return out;
}

std::vector<Index> NeighborGraph::component_labels(Index* count) const {
  const Index n = size();
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
      for (Index w : adj_[static_cast<std::size_t>(v)])
        if (label[static_cast<std::size_t>(w)] == -1) {
          label[static_cast<std::size_t>(w)] = components;
          stack.push_back(w);
        }
    }
    ++components;
  }
  if (count) *count = components;
  return label;
}

Index NeighborGraph::component_count() const {
  Index count = 0;
  component_labels(&count);
  return count;
}

bool NeighborGraph::connected() const { return size() == 0 || component_count() == 1; }

bool NeighborGraph::is_bridge(Index i, Index j) const {
  // Depth-first search from i avoiding the edge itself; the edge is a bridge
  // exactly when j is unreachable this way.
  if (!has_edge(i, j)) throw std::invalid_argument("is_bridge called on a non-edge");
  std::vector<char> seen(static_cast<std::size_t>(size()), 0);
  std::vector<Index> stack{i};
  seen[static_cast<std::size_t>(i)] = 1;
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    for (Index w : adj_[static_cast<std::size_t>(v)]) {
      if (v == i && w == j) continue;
      if (w == j) return false;
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
  }
  return true;
}

}  // namespace ian
