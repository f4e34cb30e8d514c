#include "bsn/repair.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace bsn {
namespace {

bool is_external(const CandidateType& t, int i) {
  const auto& y = t.pairs[static_cast<size_t>(i)].y;
  return !(y.size() == 1 && t.base.is_steiner(y[0]));
}

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

bool is_type_edge_cut(const CandidateType& t, const std::vector<int>& removed) {
  // Terminal endpoints of a labelled edge always fall in one component of
  // the underlying network, so connectivity can be decided on the graph whose
  // nodes are those components and the Steiner points.
  const Network& base = t.base;
  const int n = base.terminal_count();
  Network terminal_part(n, 0);
  for (const auto& e : base.terminal_edges()) terminal_part.add_edge(e.u, e.v);
  int comps = 0;
  const auto label = component_labels(terminal_part, &comps);
  const int k = base.steiner_count();
  const int nodes = comps + k;

  std::vector<std::vector<int>> adj(static_cast<size_t>(nodes));
  for (size_t i = 0; i < t.pairs.size(); ++i) {
    if (std::find(removed.begin(), removed.end(), static_cast<int>(i)) != removed.end()) continue;
    const auto& p = t.pairs[i];
    const int a = comps + (p.s - n);
    const int y = p.y.front();
    const int b = base.is_steiner(y) ? comps + (y - n) : label[y];
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> seen(static_cast<size_t>(nodes), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached < nodes;
}

std::vector<PotentialCut> potential_cuts(const CandidateType& t, int max_size) {
  std::vector<int> ext;
  for (int i = 0; i < static_cast<int>(t.pairs.size()); ++i)
    if (is_external(t, i)) ext.push_back(i);

  std::vector<PotentialCut> out;
  std::vector<int> chosen;
  std::function<void(size_t, const std::vector<int>&)> grow = [&](size_t from, const std::vector<int>& common) {
    if (!chosen.empty() && is_type_edge_cut(t, chosen)) {
      bool minimal = true;
      for (size_t drop = 0; drop < chosen.size() && minimal; ++drop) {
        std::vector<int> sub = chosen;
        sub.erase(sub.begin() + static_cast<long>(drop));
        if (!sub.empty() && is_type_edge_cut(t, sub)) minimal = false;
      }
      // With every class a singleton the endpoints are forced and the cut
      // cannot be repaired by banning.
      bool forced = true;
      for (int i : chosen) forced = forced && t.pairs[static_cast<size_t>(i)].y.size() == 1;
      if (minimal && !forced) out.push_back({chosen, common});
      return;  // supersets of a cut are never minimal
    }
    if (static_cast<int>(chosen.size()) >= max_size) return;
    for (size_t j = from; j < ext.size(); ++j) {
      const auto& y = t.pairs[static_cast<size_t>(ext[j])].y;
      std::vector<int> next = chosen.empty() ? y : intersect(common, y);
      if (next.empty()) continue;
      chosen.push_back(ext[j]);
      grow(j + 1, next);
      chosen.pop_back();
    }
  };
  grow(0, {});
  return out;
}

std::optional<PlacementResult> two_connect(const CandidateType& t, const Metric& m,
                                           const std::vector<PotentialCut>& cuts) {
  std::optional<PlacementResult> best;
  auto consider = [&](PlacementResult r) {
    if (!is_2_connected(r.network)) return;
    if (!best || r.bottleneck < best->bottleneck) best = std::move(r);
  };

  consider(optimize_placement(t, m));
  const size_t q = cuts.size();
  if (q == 0) return best;

  std::vector<size_t> perm(q);
  std::iota(perm.begin(), perm.end(), size_t{0});
  do {
    // Every choice of a pinned edge t_c and a banned edge b_c != t_c per cut.
    std::vector<int> pin(q), ban(q);
    std::function<void(size_t)> pick = [&](size_t c) {
      if (c == q) {
        CandidateType cur = t;
        for (size_t j = 0; j < q; ++j) {
          const PlacementResult g = optimize_placement(cur, m);
          const int x = g.endpoints[static_cast<size_t>(pin[j])];
          cur.pairs[static_cast<size_t>(pin[j])].y = {x};
          auto& yb = cur.pairs[static_cast<size_t>(ban[j])].y;
          std::erase(yb, x);
          if (yb.empty()) return;
        }
        consider(optimize_placement(cur, m));
        return;
      }
      const auto& gamma = cuts[perm[c]].edges;
      for (int a : gamma)
        for (int b : gamma) {
          if (a == b) continue;
          pin[c] = a;
          ban[c] = b;
          pick(c + 1);
        }
    };
    pick(0);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

PlacementResult two_connect_or(const CandidateType& t, const Metric& m, const std::vector<PotentialCut>& cuts,
                               const std::vector<int>& fallback) {
  if (auto r = two_connect(t, m, cuts)) return *std::move(r);
  CandidateType fixed = t;
  for (size_t i = 0; i < fixed.pairs.size(); ++i) fixed.pairs[i].y = {fallback[i]};
  PlacementResult r = optimize_placement(fixed, m);
  if (!is_2_connected(r.network)) throw std::logic_error("fallback representative is not 2-connected");
  return r;
}

}  // namespace bsn
