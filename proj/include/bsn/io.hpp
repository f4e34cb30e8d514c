#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bsn/driver.hpp"

namespace bsn {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// JSON object with keys "p" (number or "inf"), "k" and "terminals"
/// ([[x, y], ...]). Unknown keys are rejected.
Instance parse_instance(const std::string& text);
std::string format_instance(const Instance& inst);

/// A solution together with the instance it solves.
struct SolutionDocument {
  Instance instance;
  Solution solution;
};

std::string format_solution(const Instance& inst, const Solution& sol);
/// Inverse of format_solution. Edge lengths are recomputed from coordinates.
SolutionDocument parse_solution(const std::string& text);

struct CheckReport {
  bool ok = true;
  std::vector<std::string> problems;
};

/// 2-connectivity, Steiner budget, degree bound and bottleneck recomputation.
/// `recorded_lengths` are the lengths stored in the file, one per edge.
CheckReport check_solution(const SolutionDocument& doc, double tolerance,
                           const std::vector<double>& recorded_lengths = {});

/// Recorded edge lengths of a solution file in edge order.
std::vector<double> recorded_edge_lengths(const std::string& text);

/// SVG 1.1 drawing: terminals filled, Steiner points open (coincident ones
/// drawn once), the longest edge labelled "b".
std::string render_svg(const SolutionDocument& doc);

}  // namespace bsn
