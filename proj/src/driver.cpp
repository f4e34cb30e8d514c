#include "bsn/driver.hpp"

#include <chrono>
#include <set>
#include <stdexcept>

#include "bsn/builder.hpp"
#include "bsn/linked.hpp"
#include "bsn/threshold.hpp"

namespace bsn {

void Instance::validate() const {
  if (terminals.size() < 2) throw std::invalid_argument("at least two terminals are required");
  if (k < 0) throw std::invalid_argument("negative Steiner budget");
  std::set<Point> seen(terminals.begin(), terminals.end());
  if (seen.size() != terminals.size()) throw std::invalid_argument("terminals must be distinct");
}

std::vector<double> solver_levels(const Instance& inst) {
  std::vector<double> out{0.0};
  for (double d : distance_levels(inst.terminals, inst.metric)) out.push_back(d);
  return out;
}

namespace {

Solution threshold_solution(const Instance& inst, double level) {
  Solution s;
  s.network = threshold_graph(inst.terminals, inst.metric, level);
  s.bottleneck = s.network.bottleneck(inst.metric);
  s.threshold_used = level;
  return s;
}

void offer(std::optional<Solution>& best, Solution s) {
  if (!best || s.bottleneck < best->bottleneck) best = std::move(s);
}

}  // namespace

LevelResult evaluate_level(const Instance& inst, double level, SolveStats* stats) {
  LevelResult out;
  out.level = level;
  const int delta = inst.metric.max_steiner_degree();
  const auto g0 = threshold_network(inst.terminals, inst.metric, level, 0);
  const int gate = inst.k == 0 ? 2 : delta * inst.k;
  if (g0.b_value() > gate) {
    out.gated = true;
    return out;
  }
  if (is_2_connected(g0.base)) offer(out.best, threshold_solution(inst, level));

  for (int kk = 1; kk <= inst.k; ++kk) {
    const auto g_un = threshold_network(inst.terminals, inst.metric, level, kk);
    if (g_un.b_value() > delta * kk) continue;
    BuildOptions bo;
    bo.max_steiner_degree = delta;
    const auto records = build_ses(g_un, bo);
    if (stats) stats->candidate_types += static_cast<long>(records.size());
    for (const auto& rec : records) {
      BinLinkStats bl;
      PlacementResult r = bin_link(rec, g_un, inst.metric, &bl);
      if (stats) stats->linked_evaluations += bl.evaluations;
      Solution s;
      s.network = std::move(r.network);
      s.bottleneck = r.bottleneck;
      s.steiner_count = kk;
      s.threshold_used = level;
      offer(out.best, std::move(s));
    }
  }
  return out;
}

Solution solve(const Instance& inst, const SolveOptions& opt) {
  inst.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto levels = solver_levels(inst);
  SolveStats stats;
  std::optional<Solution> best;

  auto run = [&](int d) {
    ++stats.levels_explored;
    LevelResult r = evaluate_level(inst, levels[static_cast<size_t>(d)], &stats);
    if (r.best) offer(best, *r.best);
    return r;
  };

  const int last = static_cast<int>(levels.size()) - 1;
  if (opt.sweep) {
    for (int d = 0; d <= last; ++d) run(d);
  } else {
    // Lower medians moving down, upper medians moving up; stop on a revisit.
    int lo = 0, hi = last;
    int d = (lo + hi) / 2;
    std::set<int> seen;
    while (seen.insert(d).second) {
      const LevelResult r = run(d);
      const bool down = !r.gated && r.best && r.best->bottleneck <= levels[static_cast<size_t>(d)];
      if (down) {
        hi = d;
        d = (lo + d) / 2;
      } else {
        lo = d;
        d = (d + hi + 1) / 2;
      }
    }
  }
  if (!best) throw std::logic_error("no 2-connected network found");
  best->stats = stats;
  best->stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return *std::move(best);
}

Solution solve_k0(const Instance& inst) {
  inst.validate();
  const auto levels = solver_levels(inst);
  size_t lo = 0, hi = levels.size() - 1;  // the top level is a complete graph
  while (lo < hi) {
    const size_t mid = (lo + hi) / 2;
    if (is_2_connected(threshold_graph(inst.terminals, inst.metric, levels[mid]))) hi = mid;
    else lo = mid + 1;
  }
  Solution s = threshold_solution(inst, levels[lo]);
  s.stats.levels_explored = 1;
  return s;
}

}  // namespace bsn
