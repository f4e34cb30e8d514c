#pragma once

#include <optional>
#include <vector>

#include "bsn/graph_core.hpp"
#include "bsn/threshold.hpp"

namespace bsn {

/// One labelled Steiner edge: Steiner point `s` joined to some member of `y`.
/// `y` is a single Steiner id or a sorted set of terminal ids.
struct EndpointPair {
  int s = 0;
  std::vector<int> y;

  friend bool operator==(const EndpointPair&, const EndpointPair&) = default;
  friend auto operator<=>(const EndpointPair&, const EndpointPair&) = default;
};

using SteinerEndpointSequence = std::vector<EndpointPair>;

/// An underlying network (terminals placed, Steiner points unplaced) together
/// with a sequence of labelled Steiner edges.
struct CandidateType {
  Network base;
  SteinerEndpointSequence pairs;
};

/// Adds edge s_i y_i for every pair; `endpoints[i]` must lie in pair i's set.
Network representative(const CandidateType& t, const std::vector<int>& endpoints);

/// Endpoint per pair such that `g` is exactly that representative, or
/// nullopt when `g` is not a representative of `t`.
std::optional<std::vector<int>> endpoints_of(const CandidateType& t, const Network& g);

struct SequenceRecord {
  SteinerEndpointSequence q;
  Network m_q;                 // the 2-connected representative built alongside q
  std::vector<int> endpoints;  // endpoint of each pair in m_q
};

struct BuildOptions {
  int max_steiner_degree = 5;
  /// Drop records whose representative has non-critical Steiner edges,
  /// degree-two chord paths, linked sets or Steiner cycles.
  bool filter = true;
  /// Safety valve on recursion states; exceeded builds throw.
  long max_states = 5'000'000;
};

/// Valid pairs for the graph `f` (the underlying network plus Steiner edges).
std::vector<EndpointPair> valid_pairs(const Network& f, const UnderlyingNetwork& g_un, int max_degree);

/// Relocations of terminal endpoints performed when the running graph first
/// becomes connected. The input graph is the first element of the output.
std::vector<Network> order_variants(const Network& f, const UnderlyingNetwork& g_un);

/// Steiner endpoint sequences for the underlying network with all of its
/// Steiner placeholders in use.
std::vector<SequenceRecord> build_ses(const UnderlyingNetwork& g_un, const BuildOptions& opt);

}  // namespace bsn
