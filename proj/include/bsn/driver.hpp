#pragma once

#include <optional>
#include <vector>

#include "bsn/geometry.hpp"
#include "bsn/graph_core.hpp"

namespace bsn {

struct Instance {
  std::vector<Point> terminals;
  int k = 0;
  Metric metric;

  /// Throws std::invalid_argument unless n >= 2, k >= 0 and terminals are distinct.
  void validate() const;
};

struct SolveStats {
  long candidate_types = 0;
  int levels_explored = 0;
  long linked_evaluations = 0;
  double wall_seconds = 0.0;
};

struct Solution {
  Network network;  // every vertex placed
  double bottleneck = 0.0;
  int steiner_count = 0;
  double threshold_used = 0.0;
  SolveStats stats;
};

struct SolveOptions {
  /// Evaluate every level instead of binary searching.
  bool sweep = false;
};

/// Candidate thresholds: 0 (no terminal edges) followed by the distinct
/// pairwise distances.
std::vector<double> solver_levels(const Instance& inst);

struct LevelResult {
  double level = 0.0;
  bool gated = false;  // too many leaf blocks for the Steiner budget
  std::optional<Solution> best;
};

/// Cheapest network whose terminal part is the threshold graph at `level`.
LevelResult evaluate_level(const Instance& inst, double level, SolveStats* stats = nullptr);

Solution solve(const Instance& inst, const SolveOptions& opt = {});

/// Smallest level whose threshold graph is 2-connected. The Steiner budget
/// is ignored.
Solution solve_k0(const Instance& inst);

}  // namespace bsn
