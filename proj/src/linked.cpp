#include "bsn/linked.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace bsn {
namespace {

bool contains(const std::vector<int>& v, int x) { return std::binary_search(v.begin(), v.end(), x); }

bool is_internal(const EndpointPair& p, const Network& base) { return p.y.size() == 1 && base.is_steiner(p.y[0]); }

std::vector<int> terminals_in(const std::vector<std::vector<int>>& blocks, int lo, int hi, const Network& base) {
  std::set<int> out;
  for (int j = lo; j <= hi; ++j)
    for (int v : blocks[static_cast<size_t>(j - 1)])
      if (base.is_terminal(v)) out.insert(v);
  return {out.begin(), out.end()};
}

std::vector<int> minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::optional<std::vector<std::vector<int>>> ordered_block_path(const Network& g, int from, int to) {
  if (!is_connected(g)) return std::nullopt;
  const auto bcf = block_cut_forest(g);
  for (const auto& b : bcf.blocks)
    if (b.bcf_degree() > 2) return std::nullopt;
  for (int c : bcf.cut_vertices)
    if (bcf.blocks_of[static_cast<size_t>(c)].size() != 2) return std::nullopt;
  if (bcf.blocks.size() == 1) {
    const auto& b = bcf.blocks.front();
    if (!b.contains(from) || !b.contains(to)) return std::nullopt;
    return std::vector<std::vector<int>>{b.vertices};
  }
  if (bcf.is_cut(from) || bcf.is_cut(to)) return std::nullopt;
  int cur = bcf.blocks_of[static_cast<size_t>(from)].front();
  if (!bcf.blocks[static_cast<size_t>(cur)].is_leaf()) return std::nullopt;
  std::vector<std::vector<int>> out;
  int came_through = -1;
  while (true) {
    const auto& b = bcf.blocks[static_cast<size_t>(cur)];
    out.push_back(b.vertices);
    int next_cut = -1;
    for (int c : b.cut_vertices)
      if (c != came_through) next_cut = c;
    if (next_cut < 0) break;
    const auto& bs = bcf.blocks_of[static_cast<size_t>(next_cut)];
    cur = bs[0] == cur ? bs[1] : bs[0];
    came_through = next_cut;
  }
  if (!contains(out.back(), to)) return std::nullopt;
  return out;
}

std::vector<LinkedSet> detect_linked_sets(const Network& n) {
  std::vector<Edge> ext;
  for (const auto& e : n.steiner_edges())
    if (n.is_terminal(e.u) != n.is_terminal(e.v)) ext.push_back(e);
  std::vector<LinkedSet> out;
  for (size_t i = 0; i < ext.size(); ++i)
    for (size_t j = i + 1; j < ext.size(); ++j) {
      const int si = n.is_steiner(ext[i].u) ? ext[i].u : ext[i].v;
      const int sj = n.is_steiner(ext[j].u) ? ext[j].u : ext[j].v;
      if (si == sj) continue;
      Network h = n;
      h.remove_edge(ext[i].u, ext[i].v);
      h.remove_edge(ext[j].u, ext[j].v);
      const auto path = ordered_block_path(h, si, sj);
      if (path && path->size() >= 2) out.push_back({ext[i], ext[j]});
    }
  return out;
}

std::vector<int> canonical_representative(const CandidateType& t, const std::vector<int>& endpoints, int a,
                                          const UnderlyingNetwork& g_un) {
  const Network& base = t.base;
  const auto& ha = t.pairs[static_cast<size_t>(a)];
  std::vector<int> cur = endpoints;
  for (size_t i = 0; i < t.pairs.size(); ++i) {
    if (static_cast<int>(i) == a || is_internal(t.pairs[i], base)) continue;
    const int x = cur[i];
    const auto& vs = g_un.valid_subsets[static_cast<size_t>(g_un.subset_of[static_cast<size_t>(x)])];
    if (vs.kind != SubsetKind::path_interior || vs.path_blocks.size() < 2) continue;

    std::map<int, std::vector<int>> where;  // vertex -> path block positions
    for (size_t j = 0; j < vs.path_blocks.size(); ++j)
      for (int v : g_un.bcf.blocks[static_cast<size_t>(vs.path_blocks[j])].vertices)
        where[v].push_back(static_cast<int>(j));
    auto pos = [&](int v) {
      const auto& ps = where.at(v);
      double s = 0;
      for (int p : ps) s += p;
      return s / static_cast<double>(ps.size());
    };

    // Nearest terminal of the path reached from s_i outside the path.
    Network g = representative(t, cur);
    g.remove_edge(ha.s, ha.y[0]);
    const auto adj = g.adjacency();
    const int s = t.pairs[i].s;
    std::vector<char> seen(static_cast<size_t>(g.vertex_count()), 0);
    seen[static_cast<size_t>(x)] = 1;
    seen[static_cast<size_t>(s)] = 1;
    std::queue<int> bfs;
    bfs.push(s);
    int y_prime = -1;
    while (!bfs.empty() && y_prime < 0) {
      const int v = bfs.front();
      bfs.pop();
      auto nbrs = adj[static_cast<size_t>(v)];
      std::sort(nbrs.begin(), nbrs.end());
      for (int w : nbrs) {
        if (seen[static_cast<size_t>(w)]) continue;
        seen[static_cast<size_t>(w)] = 1;
        if (where.count(w)) {
          y_prime = w;
          break;
        }
        bfs.push(w);
      }
    }
    if (y_prime < 0) continue;

    const double sign = pos(x) >= pos(y_prime) ? 1.0 : -1.0;
    std::vector<int> order = vs.members;
    std::stable_sort(order.begin(), order.end(), [&](int p, int q) {
      const double sp = sign * pos(p), sq = sign * pos(q);
      if (sp != sq) return sp > sq;
      if ((p == x) != (q == x)) return p == x;
      return p < q;
    });
    for (int cand : order) {
      if (!contains(t.pairs[i].y, cand)) continue;
      std::vector<int> trial = cur;
      trial[i] = cand;
      bool duplicate = false;
      for (size_t j = 0; j < trial.size(); ++j)
        if (j != i && t.pairs[j].s == s && trial[j] == cand) duplicate = true;
      if (duplicate) continue;
      if (!is_2_connected(representative(t, trial))) continue;
      cur = std::move(trial);
      break;
    }
  }
  return cur;
}

std::vector<int> window_right(const SplitEdge& e, int mk, const Network& base) {
  const int p = e.p();
  if (mk < 2 || mk > p - 1) throw std::out_of_range("marker outside 2..p-1");
  return minus(terminals_in(e.blocks, mk, p, base), terminals_in(e.blocks, mk - 1, mk - 1, base));
}

std::vector<int> window_left(const SplitEdge& e, int mk, const Network& base) {
  const int p = e.p();
  if (mk < 2 || mk > p - 1) throw std::out_of_range("marker outside 2..p-1");
  return minus(terminals_in(e.blocks, 1, mk, base), terminals_in(e.blocks, mk + 1, mk + 1, base));
}

bool splittable(const SplitEdge& e, const Network& base) {
  const int p = e.p();
  if (p < 3) return false;
  bool left_seen = false;
  for (int a = 2; a <= p - 1; ++a) {
    // U_{a,2} = B_a - B_{a+1} and U_{a,1} = B_a - B_{a-1}, terminals only.
    const auto ba = terminals_in(e.blocks, a, a, base);
    if (!minus(ba, terminals_in(e.blocks, a + 1, a + 1, base)).empty()) left_seen = true;
    if (left_seen && !minus(ba, terminals_in(e.blocks, a - 1, a - 1, base)).empty()) return true;
  }
  return false;
}

std::optional<SteinerEndpointSequence> mark_ses(const SteinerEndpointSequence& q, const std::vector<SplitEdge>& edges,
                                                const std::vector<int>& markers,
                                                const std::vector<std::pair<int, int>>& components,
                                                const UnderlyingNetwork& g_un,
                                                std::vector<std::pair<int, int>>* linked_pairs) {
  if (edges.size() != markers.size() || edges.size() != components.size())
    throw std::invalid_argument("one marker and one component pair per split edge");
  const Network& base = g_un.base;
  auto in_component = [&](const std::vector<int>& ys, int c) {
    std::vector<int> out;
    for (int y : ys)
      if (g_un.component_of[static_cast<size_t>(y)] == c) out.push_back(y);
    return out;
  };
  SteinerEndpointSequence out;
  std::vector<std::pair<int, int>> links(edges.size());
  for (size_t i = 0; i < q.size(); ++i) {
    size_t j = 0;
    while (j < edges.size() && edges[j].pair != static_cast<int>(i)) ++j;
    if (j == edges.size()) {
      out.push_back(q[i]);
      continue;
    }
    const auto& e = edges[j];
    auto y1 = in_component(window_right(e, markers[j], base), components[j].first);
    auto y2 = in_component(window_left(e, markers[j], base), components[j].second);
    if (y1.empty() || y2.empty()) return std::nullopt;
    links[j].first = static_cast<int>(out.size());
    out.push_back({q[i].s, std::move(y1)});
    links[j].second = static_cast<int>(out.size());
    out.push_back({q[i].y[0], std::move(y2)});
  }
  if (linked_pairs) *linked_pairs = std::move(links);
  return out;
}

std::vector<SplitEdge> split_edges(const SequenceRecord& rec, const UnderlyingNetwork& g_un) {
  const CandidateType t{g_un.base, rec.q};
  std::vector<SplitEdge> out;
  for (size_t a = 0; a < rec.q.size(); ++a) {
    if (!is_internal(rec.q[a], g_un.base)) continue;
    const auto ends = canonical_representative(t, rec.endpoints, static_cast<int>(a), g_un);
    Network g = representative(t, ends);
    g.remove_edge(rec.q[a].s, rec.q[a].y[0]);
    auto path = ordered_block_path(g, rec.q[a].s, rec.q[a].y[0]);
    if (!path) continue;
    SplitEdge e{static_cast<int>(a), std::move(*path)};
    if (splittable(e, g_un.base)) out.push_back(std::move(e));
  }
  return out;
}

namespace {

struct Evaluation {
  std::optional<PlacementResult> result;
  std::vector<std::pair<int, int>> links;
  std::vector<int> component;  // Steiner component per pair of the split sequence
  int longest_component = -1;  // component holding a longest Steiner edge
};

class Linker {
 public:
  Linker(const SequenceRecord& rec, const UnderlyingNetwork& g_un, const Metric& m, BinLinkStats* stats)
      : rec_(rec), g_un_(g_un), m_(m), stats_(stats), splits_(split_edges(rec, g_un)) {
    const CandidateType t{g_un.base, rec.q};
    best_ = two_connect_or(t, m, potential_cuts(t, max_cut()), rec.endpoints);
  }

  const std::vector<SplitEdge>& splits() const { return splits_; }
  PlacementResult take() { return std::move(best_); }

  int budget() const {
    return m_.max_steiner_degree() * g_un_.steiner - static_cast<int>(rec_.q.size());
  }

  Evaluation evaluate(const std::vector<SplitEdge>& w, const std::vector<int>& mk,
                      const std::vector<std::pair<int, int>>& comps) {
    Evaluation ev;
    auto q = mark_ses(rec_.q, w, mk, comps, g_un_, &ev.links);
    if (!q) return ev;
    if (stats_) ++stats_->evaluations;
    const CandidateType t{g_un_.base, *q};
    try {
      ev.result = two_connect(t, m_, potential_cuts(t, max_cut()));
    } catch (const std::invalid_argument&) {
      return ev;  // degree bound or Steiner cycle violated
    }
    if (!ev.result) return ev;
    if (ev.result->bottleneck < best_.bottleneck) best_ = *ev.result;

    const auto labels = steiner_components(t);
    const int n = g_un_.base.terminal_count();
    ev.component.resize(q->size());
    for (size_t i = 0; i < q->size(); ++i) ev.component[i] = labels[static_cast<size_t>((*q)[i].s - n)];
    double longest = -1;
    const Network& net = ev.result->network;
    for (const auto& e : net.steiner_edges()) {
      const double len = *net.length(e, m_);
      const int s = net.is_steiner(e.u) ? e.u : e.v;
      const int c = labels[static_cast<size_t>(s - n)];
      if (len > longest || (len == longest && c < ev.longest_component)) {
        longest = len;
        ev.longest_component = c;
      }
    }
    return ev;
  }

 private:
  int max_cut() const { return std::max(1, m_.max_steiner_degree() * g_un_.steiner); }

  const SequenceRecord& rec_;
  const UnderlyingNetwork& g_un_;
  const Metric& m_;
  BinLinkStats* stats_;
  std::vector<SplitEdge> splits_;
  PlacementResult best_;
};

// Calls f(W) for every nonempty subset of the split edges of size at most
// `budget`, and f(W, C) for every assignment of component pairs.
void for_each_split(const std::vector<SplitEdge>& splits, int budget, int comps,
                    const std::function<void(const std::vector<SplitEdge>&,
                                             const std::vector<std::pair<int, int>>&)>& f) {
  const size_t s = splits.size();
  if (s >= 31) throw std::length_error("too many split edges");
  for (unsigned mask = 1; mask < (1u << s); ++mask) {
    if (std::popcount(mask) > budget) continue;
    std::vector<SplitEdge> w;
    for (size_t i = 0; i < s; ++i)
      if (mask >> i & 1u) w.push_back(splits[i]);
    std::vector<std::pair<int, int>> c(w.size());
    std::function<void(size_t)> assign = [&](size_t i) {
      if (i == w.size()) {
        f(w, c);
        return;
      }
      for (int a = 0; a < comps; ++a)
        for (int b = 0; b < comps; ++b) {
          c[i] = {a, b};
          assign(i + 1);
        }
    };
    assign(0);
  }
}

}  // namespace

PlacementResult bin_link(const SequenceRecord& rec, const UnderlyingNetwork& g_un, const Metric& m,
                         BinLinkStats* stats) {
  Linker linker(rec, g_un, m, stats);
  for_each_split(linker.splits(), linker.budget(), g_un.component_count,
                 [&](const std::vector<SplitEdge>& w, const std::vector<std::pair<int, int>>& comps) {
                   // Marker state: mk per split edge and the (left, right) bounds.
                   using State = std::pair<std::vector<int>, std::vector<std::pair<int, int>>>;
                   std::set<State> visited;
                   std::function<void(const std::vector<int>&, const std::vector<std::pair<int, int>>&)> calc =
                       [&](const std::vector<int>& mk, const std::vector<std::pair<int, int>>& mx) {
                         if (!visited.emplace(mk, mx).second) return;
                         for (size_t j = 0; j < w.size(); ++j)
                           if (mk[j] < 2 || mk[j] > w[j].p() - 1) return;
                         const Evaluation ev = linker.evaluate(w, mk, comps);
                         for (size_t j = 0; j < w.size(); ++j) {
                           for (int side = 0; side < 2; ++side) {
                             if (ev.result) {
                               const int idx = side == 0 ? ev.links[j].first : ev.links[j].second;
                               if (ev.component[static_cast<size_t>(idx)] != ev.longest_component) continue;
                             }
                             const int own = side == 0 ? mx[j].first : mx[j].second;
                             const int partner = side == 0 ? mx[j].second : mx[j].first;
                             if (mk[j] == own || mk[j] == partner) continue;
                             std::vector<int> next_mk;
                             if (std::abs(mk[j] - own) == 1) next_mk = {mk[j], own};
                             else next_mk = {(mk[j] + own) / 2};
                             for (int v : next_mk) {
                               auto mk2 = mk;
                               auto mx2 = mx;
                               mk2[j] = v;
                               (side == 0 ? mx2[j].second : mx2[j].first) = mk[j];
                               calc(mk2, mx2);
                             }
                           }
                         }
                       };
                   std::vector<int> mk;
                   std::vector<std::pair<int, int>> mx;
                   for (const auto& e : w) {
                     mk.push_back((2 + e.p() - 1) / 2);
                     mx.emplace_back(1, e.p());
                   }
                   calc(mk, mx);
                 });
  return linker.take();
}

PlacementResult bin_link_exhaustive(const SequenceRecord& rec, const UnderlyingNetwork& g_un, const Metric& m) {
  Linker linker(rec, g_un, m, nullptr);
  for_each_split(linker.splits(), linker.budget(), g_un.component_count,
                 [&](const std::vector<SplitEdge>& w, const std::vector<std::pair<int, int>>& comps) {
                   std::vector<int> mk(w.size(), 2);
                   std::function<void(size_t)> sweep = [&](size_t j) {
                     if (j == w.size()) {
                       linker.evaluate(w, mk, comps);
                       return;
                     }
                     for (int v = 2; v <= w[j].p() - 1; ++v) {
                       mk[j] = v;
                       sweep(j + 1);
                     }
                   };
                   sweep(0);
                 });
  return linker.take();
}

}  // namespace bsn
