#pragma once

#include <vector>

#include "bsn/geometry.hpp"
#include "bsn/graph_core.hpp"

namespace bsn {

/// Distinct pairwise terminal distances, ascending. Values within a relative
/// 1e-12 of each other share a level.
std::vector<double> distance_levels(const std::vector<Point>& terminals, const Metric& m);

enum class SubsetKind {
  leaf_interior,
  path_interior,
  isolated_block,
  cut_singleton,
  /// Non-cut vertices of a block with three or more cut vertices.
  junction_interior,
};

struct ValidSubset {
  SubsetKind kind = SubsetKind::leaf_interior;
  std::vector<int> members;  // sorted terminal ids
  /// For path interiors: the degree-two block path, blocks in path order as
  /// indices into the forest of the terminal part.
  std::vector<int> path_blocks;
};

/// Terminal edges of length at most `level`, plus `steiner` isolated
/// placeholders that carry no coordinates.
struct UnderlyingNetwork {
  Network base;
  double level = 0.0;
  int steiner = 0;
  BlockCutForest bcf;  // of the terminal part
  std::vector<ValidSubset> valid_subsets;
  std::vector<int> subset_of;     // per terminal, index into valid_subsets
  std::vector<int> component_of;  // per terminal, component of the terminal part
  int component_count = 0;

  int b_value() const { return bcf.leaf_count() + 2 * bcf.isolated_count(); }
};

/// Threshold graph [K] at `level` (closed comparison); `level` = 0 gives the
/// edgeless graph.
Network threshold_graph(const std::vector<Point>& terminals, const Metric& m, double level);

/// Underlying network over an arbitrary terminal graph (no Steiner vertices).
/// Terminal positions are copied when present.
UnderlyingNetwork underlying_network(const Network& terminal_part, double level, int k);

UnderlyingNetwork threshold_network(const std::vector<Point>& terminals, const Metric& m, double level, int k);

/// Cut vertices of the terminal part that are of forest degree at least three
/// or lie in a block whose forest degree is not two.
std::vector<int> compute_V_CV(const BlockCutForest& bcf);

std::vector<ValidSubset> valid_subset_partition(const Network& terminal_part, const BlockCutForest& bcf);

}  // namespace bsn
