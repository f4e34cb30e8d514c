#pragma once

#include <vector>

#include "bsn/builder.hpp"
#include "bsn/geometry.hpp"
#include "bsn/graph_core.hpp"

namespace bsn {

struct PlacementResult {
  std::vector<Point> steiner_positions;  // by Steiner index (id - n)
  std::vector<int> endpoints;            // chosen endpoint per pair
  double bottleneck = 0.0;               // over terminal and Steiner edges
  Network network;                       // the placed representative
};

/// Cheapest placement and endpoint choice for a candidate type whose Steiner
/// topology is a forest with degrees at most the metric's bound. Throws
/// std::invalid_argument otherwise.
PlacementResult optimize_placement(const CandidateType& t, const Metric& m);

/// Whether some placement has every edge of length at most `lambda`.
bool placement_feasible(const CandidateType& t, const Metric& m, double lambda);

/// Component label of every Steiner point (index id - n) in the Steiner
/// topology of `t`; labels follow the smallest member.
std::vector<int> steiner_components(const CandidateType& t, int* count = nullptr);

}  // namespace bsn
