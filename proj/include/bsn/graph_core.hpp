#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bsn/geometry.hpp"

namespace bsn {

/// Undirected edge with `u < v`.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}
  int other(int w) const { return w == u ? v : u; }
  bool touches(int w) const { return u == w || v == w; }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple graph on terminals `0..terminals-1` followed by Steiner points.
/// Edges are kept sorted and unique.
class Network {
 public:
  Network() = default;
  Network(int terminals, int steiner);

  int terminal_count() const { return terminals_; }
  int steiner_count() const { return static_cast<int>(positions_.size()) - terminals_; }
  int vertex_count() const { return static_cast<int>(positions_.size()); }
  bool is_terminal(int v) const { return v < terminals_; }
  bool is_steiner(int v) const { return v >= terminals_; }

  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(int a, int b) const;
  /// Returns false when the edge already exists. Loops are rejected.
  bool add_edge(int a, int b);
  bool remove_edge(int a, int b);
  bool is_steiner_edge(const Edge& e) const { return is_steiner(e.u) || is_steiner(e.v); }
  std::vector<Edge> steiner_edges() const;
  std::vector<Edge> terminal_edges() const;
  int degree(int v) const;
  std::vector<std::vector<int>> adjacency() const;

  const std::optional<Point>& position(int v) const { return positions_[static_cast<size_t>(v)]; }
  void set_position(int v, Point p) { positions_[static_cast<size_t>(v)] = p; }
  /// Length of an edge; nullopt unless both endpoints carry coordinates.
  std::optional<double> length(const Edge& e, const Metric& m) const;
  /// Longest edge; requires every vertex of every edge to be placed.
  double bottleneck(const Metric& m) const;

  /// Deletes a Steiner point; later Steiner ids shift down by one.
  void remove_steiner(int v);

  friend bool operator==(const Network&, const Network&) = default;

 private:
  int terminals_ = 0;
  std::vector<std::optional<Point>> positions_;
  std::vector<Edge> edges_;
};

bool is_connected(const Network& g);
/// Component label per vertex, labels numbered in order of smallest vertex.
std::vector<int> component_labels(const Network& g, int* count = nullptr);
/// Vertex connectivity at least two; K1 and K2 count as 2-connected.
bool is_2_connected(const Network& g);

struct Block {
  std::vector<int> vertices;  // sorted
  std::vector<Edge> edges;    // sorted; empty for an isolated vertex
  std::vector<int> cut_vertices;
  std::vector<int> interior;  // vertices that are not cut vertices

  bool is_leaf() const { return cut_vertices.size() == 1; }
  bool is_isolated() const { return cut_vertices.empty(); }
  int bcf_degree() const { return static_cast<int>(cut_vertices.size()); }
  bool contains(int v) const;
};

struct BlockCutForest {
  std::vector<Block> blocks;
  std::vector<int> cut_vertices;             // sorted
  std::vector<std::vector<int>> blocks_of;   // per vertex, block indices
  bool is_cut(int v) const { return blocks_of[static_cast<size_t>(v)].size() >= 2; }
  int leaf_count() const;
  int isolated_count() const;
};

/// Blocks by the depth-first lowpoint method; isolated vertices are blocks.
BlockCutForest block_cut_forest(const Network& g);

/// Leaf blocks plus twice the isolated blocks.
int leaf_and_isolated_counts(const Network& g);

/// Requires a 2-connected graph containing `e`.
bool is_critical_edge(const Network& g, const Edge& e);

/// Removes non-critical Steiner edges and degree-two Steiner chord paths
/// until none remain. Steiner points left without edges are deleted.
Network prune_to_critical(const Network& g);

/// Steiner-only subgraph has no cycle.
bool steiner_topology_acyclic(const Network& g);

/// Maximal paths whose interior vertices are degree-two Steiner points and
/// whose edges are all Steiner edges. Each path is listed by its vertices.
std::vector<std::vector<int>> degree_two_steiner_paths(const Network& g);

/// Ordering e_1..e_m of the Steiner edges such that removing them in order
/// meets the branching conditions, or nullopt.
std::optional<std::vector<Edge>> find_branching_decomposition(const Network& n, const Network& g_un);

}  // namespace bsn
