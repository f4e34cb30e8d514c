#pragma once

#include <optional>
#include <vector>

#include "bsn/builder.hpp"
#include "bsn/placement.hpp"

namespace bsn {

/// A minimal set of external labelled edges whose removal disconnects every
/// representative, with a common terminal in all of their classes.
struct PotentialCut {
  std::vector<int> edges;   // pair indices, ascending
  std::vector<int> common;  // intersection of the classes
};

/// Whether removing the labelled edges `removed` disconnects every
/// representative of `t`. Representatives must be connected.
bool is_type_edge_cut(const CandidateType& t, const std::vector<int>& removed);

/// Subsets larger than `max_size` are not examined.
std::vector<PotentialCut> potential_cuts(const CandidateType& t, int max_size);

/// Cheapest 2-connected representative reachable by pinning and banning the
/// terminal endpoints of potential-cut edges. Returns nullopt when none of
/// the examined representatives is 2-connected.
std::optional<PlacementResult> two_connect(const CandidateType& t, const Metric& m,
                                           const std::vector<PotentialCut>& cuts);

/// two_connect, falling back to the placement of the fixed representative
/// `fallback` (one endpoint per pair) when nothing else is 2-connected.
PlacementResult two_connect_or(const CandidateType& t, const Metric& m, const std::vector<PotentialCut>& cuts,
                               const std::vector<int>& fallback);

}  // namespace bsn
