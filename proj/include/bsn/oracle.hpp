#pragma once

#include <stdexcept>

#include "bsn/driver.hpp"

namespace bsn {

struct OracleConfig {
  int max_n = 7;
  int max_k = 2;  // at most 3
  /// Grid step, as a fraction of the search box, seeding each line search.
  double placement_grid_resolution = 0.125;
  int refinement_iters = 60;
};

struct OracleBoundsError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Exhaustive search over threshold graphs, Steiner forests and terminal
/// attachments, with its own placement routine. Throws OracleBoundsError
/// when the instance exceeds the configured bounds.
Solution naive_solve(const Instance& inst, const OracleConfig& cfg = {});

}  // namespace bsn
