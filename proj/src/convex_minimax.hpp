#pragma once

// Minimisation of the longest of a set of L_p distances between movable nodes
// and fixed anchors. The objective is convex in the node coordinates, so a
// central-cut ellipsoid method with a certified lower bound converges to the
// optimum; dimensions are tiny (two per Steiner point).

#include <span>
#include <vector>

#include "bsn/geometry.hpp"

namespace bsn::detail {

struct MinimaxTerm {
  int a = 0;        // movable node
  int b = -1;       // second movable node, or -1 for the fixed anchor
  Point anchor{};
};

struct MinimaxResult {
  std::vector<Point> positions;
  double value = 0.0;
  double lower_bound = 0.0;
};

/// `box` must contain an optimal placement of every node.
MinimaxResult minimize_max_distance(int nodes, std::span<const MinimaxTerm> terms, const Metric& m,
                                    const Rect& box, double rel_tol = 1e-13);

}  // namespace bsn::detail
