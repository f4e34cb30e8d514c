#include "bsn/builder.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "bsn/linked.hpp"

namespace bsn {

Network representative(const CandidateType& t, const std::vector<int>& endpoints) {
  if (endpoints.size() != t.pairs.size()) throw std::invalid_argument("one endpoint per pair is required");
  Network g = t.base;
  for (size_t i = 0; i < t.pairs.size(); ++i) {
    const auto& y = t.pairs[i].y;
    if (!std::binary_search(y.begin(), y.end(), endpoints[i]))
      throw std::invalid_argument("endpoint outside its class");
    g.add_edge(t.pairs[i].s, endpoints[i]);
  }
  return g;
}

std::optional<std::vector<int>> endpoints_of(const CandidateType& t, const Network& g) {
  std::vector<Edge> extra;
  for (const auto& e : g.edges())
    if (!t.base.has_edge(e.u, e.v)) extra.push_back(e);
  if (extra.size() != t.pairs.size()) return std::nullopt;
  std::vector<int> out(t.pairs.size(), -1);
  std::vector<char> used(extra.size(), 0);
  std::function<bool(size_t)> match = [&](size_t i) {
    if (i == t.pairs.size()) return true;
    const auto& p = t.pairs[i];
    for (size_t j = 0; j < extra.size(); ++j) {
      if (used[j] || !extra[j].touches(p.s)) continue;
      const int y = extra[j].other(p.s);
      if (!std::binary_search(p.y.begin(), p.y.end(), y)) continue;
      used[j] = 1;
      out[i] = y;
      if (match(i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  if (!match(0)) return std::nullopt;
  return out;
}

namespace {

struct Candidate {
  EndpointPair pair;
  int x = -1;  // concrete endpoint used to extend the running graph
};

bool contains(const std::vector<int>& v, int x) { return std::binary_search(v.begin(), v.end(), x); }

std::vector<Candidate> candidates(const Network& f, const UnderlyingNetwork& g_un, int max_degree) {
  std::vector<Candidate> out;
  const int n = f.terminal_count();
  const int total = f.vertex_count();
  int comps = 0;
  const auto label = component_labels(f, &comps);
  std::vector<int> deg(static_cast<size_t>(total), 0);
  for (const auto& e : f.edges()) {
    ++deg[e.u];
    ++deg[e.v];
  }

  if (comps > 1) {
    for (int s = n; s < total; ++s) {
      if (deg[s] >= max_degree) continue;
      for (int s2 = n; s2 < total; ++s2) {
        if (s2 == s || label[s2] == label[s] || deg[s2] >= max_degree) continue;
        out.push_back({{s, {s2}}, s2});
      }
      for (const auto& vs : g_un.valid_subsets) {
        if (label[vs.members.front()] == label[s]) continue;
        out.push_back({{s, vs.members}, vs.members.front()});
      }
    }
    return out;
  }

  const auto bcf = block_cut_forest(f);
  std::vector<int> leaves;
  for (size_t i = 0; i < bcf.blocks.size(); ++i)
    if (bcf.blocks[i].is_leaf()) leaves.push_back(static_cast<int>(i));
  for (int bi : leaves) {
    for (int s : bcf.blocks[bi].interior) {
      if (!f.is_steiner(s) || deg[s] >= max_degree) continue;
      for (int bj : leaves) {
        if (bj == bi) continue;
        const auto& other = bcf.blocks[bj];
        for (int s2 : other.interior)
          if (f.is_steiner(s2) && deg[s2] < max_degree && !f.has_edge(s, s2)) out.push_back({{s, {s2}}, s2});
        for (const auto& vs : g_un.valid_subsets) {
          std::vector<int> y;
          for (int v : vs.members)
            if (other.contains(v)) y.push_back(v);
          // The class may include the leaf's cut vertex; joining there gives
          // a different running graph from joining an interior member.
          int x = -1;
          for (int v : y)
            if (contains(other.interior, v) && !f.has_edge(s, v)) {
              x = v;
              break;
            }
          const int cut = other.cut_vertices.front();
          if (x >= 0) out.push_back({{s, y}, x});
          if (contains(y, cut) && !f.has_edge(s, cut)) out.push_back({{s, y}, cut});
        }
      }
    }
  }
  return out;
}

// Members of a valid subset grouped into classes of structurally equivalent
// vertices: non-cut vertices of one block of a degree-two block path form a
// class, every cut vertex of the path is its own class, and every other
// subset is a single class.
std::vector<std::vector<int>> equivalence_classes(const ValidSubset& vs, const UnderlyingNetwork& g_un) {
  if (vs.kind != SubsetKind::path_interior) return {vs.members};
  std::vector<std::vector<int>> out;
  for (int b : vs.path_blocks) {
    std::vector<int> cls;
    for (int v : g_un.bcf.blocks[static_cast<size_t>(b)].interior)
      if (contains(vs.members, v)) cls.push_back(v);
    if (!cls.empty()) out.push_back(std::move(cls));
  }
  for (int v : vs.members)
    if (g_un.bcf.is_cut(v)) out.push_back({v});
  return out;
}

}  // namespace

std::vector<EndpointPair> valid_pairs(const Network& f, const UnderlyingNetwork& g_un, int max_degree) {
  std::vector<EndpointPair> out;
  for (auto& c : candidates(f, g_un, max_degree)) out.push_back(std::move(c.pair));
  return out;
}

std::vector<Network> order_variants(const Network& f, const UnderlyingNetwork& g_un) {
  // Steiner edges with a terminal endpoint, grouped by valid subset.
  struct Slot {
    int s;
    int subset;
  };
  std::vector<Slot> slots;
  Network stripped = f;
  for (const auto& e : f.steiner_edges()) {
    if (f.is_steiner(e.u) && f.is_steiner(e.v)) continue;
    const int x = f.is_terminal(e.u) ? e.u : e.v;
    slots.push_back({e.other(x), g_un.subset_of[static_cast<size_t>(x)]});
    stripped.remove_edge(e.u, e.v);
  }

  std::vector<std::vector<std::vector<int>>> classes(g_un.valid_subsets.size());
  for (size_t i = 0; i < g_un.valid_subsets.size(); ++i) classes[i] = equivalence_classes(g_un.valid_subsets[i], g_un);

  std::vector<Network> out{f};
  std::set<std::vector<Edge>> seen{f.edges()};
  // used[subset][class] = number of members of the class already in use.
  std::vector<std::vector<int>> used(classes.size());
  for (size_t i = 0; i < classes.size(); ++i) used[i].assign(classes[i].size(), 0);
  Network cur = stripped;

  std::function<void(size_t)> assign = [&](size_t i) {
    if (i == slots.size()) {
      if (seen.insert(cur.edges()).second) out.push_back(cur);
      return;
    }
    const auto [s, sub] = slots[i];
    for (size_t c = 0; c < classes[sub].size(); ++c) {
      const auto& cls = classes[sub][c];
      const int limit = std::min<int>(used[sub][c] + 1, static_cast<int>(cls.size()));
      for (int j = 0; j < limit; ++j) {
        const int x = cls[j];
        if (!cur.add_edge(s, x)) continue;
        const bool fresh = j == used[sub][c];
        if (fresh) ++used[sub][c];
        assign(i + 1);
        if (fresh) --used[sub][c];
        cur.remove_edge(s, x);
      }
    }
  };
  assign(0);
  return out;
}

std::vector<SequenceRecord> build_ses(const UnderlyingNetwork& g_un, const BuildOptions& opt) {
  const int max_edges = opt.max_steiner_degree * g_un.steiner;
  std::vector<SequenceRecord> records;
  std::set<std::pair<SteinerEndpointSequence, std::vector<Edge>>> recorded;
  std::set<std::tuple<std::vector<Edge>, SteinerEndpointSequence, bool>> visited;
  long states = 0;

  SteinerEndpointSequence q;
  std::function<void(const Network&, bool)> rec = [&](const Network& f, bool first_connect) {
    SteinerEndpointSequence key = q;
    std::sort(key.begin(), key.end());
    if (!visited.emplace(f.edges(), key, first_connect).second) return;
    if (++states > opt.max_states) throw std::runtime_error("build_ses: state limit exceeded");

    const int t = static_cast<int>(q.size());
    if (t == max_edges || candidates(f, g_un, opt.max_steiner_degree).empty()) {
      if (is_2_connected(f) && recorded.emplace(key, f.edges()).second) {
        auto ends = endpoints_of({g_un.base, q}, f);
        if (!ends) throw std::logic_error("build_ses: record is not a representative of its sequence");
        records.push_back({q, f, *ends});
      }
      return;
    }
    std::vector<Network> psi = first_connect ? order_variants(f, g_un) : std::vector<Network>{f};
    for (const auto& fp : psi) {
      const bool was_connected = is_connected(fp);
      for (auto& c : candidates(fp, g_un, opt.max_steiner_degree)) {
        Network next = fp;
        next.add_edge(c.pair.s, c.x);
        q.push_back(c.pair);
        rec(next, !was_connected && is_connected(next));
        q.pop_back();
      }
    }
  };
  rec(g_un.base, false);

  if (!opt.filter) return records;
  std::vector<SequenceRecord> kept;
  for (auto& r : records) {
    if (!steiner_topology_acyclic(r.m_q)) continue;
    if (prune_to_critical(r.m_q) != r.m_q) continue;
    if (!detect_linked_sets(r.m_q).empty()) continue;
    kept.push_back(std::move(r));
  }
  return kept;
}

}  // namespace bsn
