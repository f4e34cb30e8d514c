#pragma once

#include <optional>
#include <vector>

#include "bsn/builder.hpp"
#include "bsn/placement.hpp"
#include "bsn/repair.hpp"
#include "bsn/threshold.hpp"

namespace bsn {

/// Two external Steiner edges whose removal leaves a block path; the Steiner
/// end of `first` lies inside one leaf block and that of `second` inside the
/// other.
struct LinkedSet {
  Edge first;
  Edge second;
};

std::vector<LinkedSet> detect_linked_sets(const Network& n);

/// Blocks of a block path, ordered from the block holding `from` to the block
/// holding `to`, both of which must be interior to the end blocks. Each entry
/// is a sorted vertex list. nullopt when the graph is not such a path.
std::optional<std::vector<std::vector<int>>> ordered_block_path(const Network& g, int from, int to);

/// Endpoint relocation producing the canonical representative for internal
/// pair `a`. `endpoints` must describe a 2-connected representative.
std::vector<int> canonical_representative(const CandidateType& t, const std::vector<int>& endpoints, int a,
                                          const UnderlyingNetwork& g_un);

/// Marker context of one internal pair: the block path of the canonical
/// representative minus that edge, oriented from the pair's owner.
struct SplitEdge {
  int pair = 0;
  std::vector<std::vector<int>> blocks;  // B_1..B_p
  int p() const { return static_cast<int>(blocks.size()); }
};

/// Terminal windows for marker `mk` in 2..p-1.
std::vector<int> window_right(const SplitEdge& e, int mk, const Network& base);  // owner side
std::vector<int> window_left(const SplitEdge& e, int mk, const Network& base);   // partner side

/// Whether some terminal pair admits a crossing split on the path.
bool splittable(const SplitEdge& e, const Network& base);

/// The split replacing each internal pair of `edges` by two external pairs
/// restricted to the given terminal components. Returns nullopt when a window
/// misses its component. `linked_pairs` receives, per split edge, the indices
/// of the two new pairs in the output sequence.
std::optional<SteinerEndpointSequence> mark_ses(const SteinerEndpointSequence& q, const std::vector<SplitEdge>& edges,
                                                const std::vector<int>& markers,
                                                const std::vector<std::pair<int, int>>& components,
                                                const UnderlyingNetwork& g_un,
                                                std::vector<std::pair<int, int>>* linked_pairs = nullptr);

struct BinLinkStats {
  long evaluations = 0;
};

/// Cheapest 2-connected network over the record's own sequence and all of
/// its splits, with the marker binary search.
PlacementResult bin_link(const SequenceRecord& rec, const UnderlyingNetwork& g_un, const Metric& m,
                         BinLinkStats* stats = nullptr);

/// Same candidate set with every marker combination evaluated.
PlacementResult bin_link_exhaustive(const SequenceRecord& rec, const UnderlyingNetwork& g_un, const Metric& m);

/// The split contexts usable for a record (splittable internal pairs).
std::vector<SplitEdge> split_edges(const SequenceRecord& rec, const UnderlyingNetwork& g_un);

}  // namespace bsn
