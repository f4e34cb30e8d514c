#include "bsn/graph_core.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace bsn {

Network::Network(int terminals, int steiner) : terminals_(terminals) {
  if (terminals < 0 || steiner < 0) throw std::invalid_argument("negative vertex count");
  positions_.resize(static_cast<size_t>(terminals + steiner));
}

bool Network::has_edge(int a, int b) const {
  if (a == b) return false;
  return std::binary_search(edges_.begin(), edges_.end(), Edge(a, b));
}

bool Network::add_edge(int a, int b) {
  if (a == b) throw std::invalid_argument("loops are not allowed");
  if (a < 0 || b < 0 || a >= vertex_count() || b >= vertex_count())
    throw std::out_of_range("edge endpoint out of range");
  const Edge e(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it != edges_.end() && *it == e) return false;
  edges_.insert(it, e);
  return true;
}

bool Network::remove_edge(int a, int b) {
  const Edge e(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return false;
  edges_.erase(it);
  return true;
}

std::vector<Edge> Network::steiner_edges() const {
  std::vector<Edge> out;
  for (const auto& e : edges_)
    if (is_steiner_edge(e)) out.push_back(e);
  return out;
}

std::vector<Edge> Network::terminal_edges() const {
  std::vector<Edge> out;
  for (const auto& e : edges_)
    if (!is_steiner_edge(e)) out.push_back(e);
  return out;
}

int Network::degree(int v) const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.touches(v); }));
}

std::vector<std::vector<int>> Network::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<size_t>(vertex_count()));
  for (const auto& e : edges_) {
    adj[static_cast<size_t>(e.u)].push_back(e.v);
    adj[static_cast<size_t>(e.v)].push_back(e.u);
  }
  return adj;
}

std::optional<double> Network::length(const Edge& e, const Metric& m) const {
  const auto& a = position(e.u);
  const auto& b = position(e.v);
  if (!a || !b) return std::nullopt;
  return distance(*a, *b, m);
}

double Network::bottleneck(const Metric& m) const {
  double best = 0.0;
  for (const auto& e : edges_) {
    const auto len = length(e, m);
    if (!len) throw std::logic_error("bottleneck of a network with unplaced vertices");
    best = std::max(best, *len);
  }
  return best;
}

void Network::remove_steiner(int v) {
  if (!is_steiner(v) || v >= vertex_count()) throw std::out_of_range("not a Steiner point");
  std::vector<Edge> kept;
  for (const auto& e : edges_) {
    if (e.touches(v)) continue;
    kept.emplace_back(e.u > v ? e.u - 1 : e.u, e.v > v ? e.v - 1 : e.v);
  }
  std::sort(kept.begin(), kept.end());
  edges_ = std::move(kept);
  positions_.erase(positions_.begin() + v);
}

// ---------------------------------------------------------------------------

std::vector<int> component_labels(const Network& g, int* count) {
  const int n = g.vertex_count();
  const auto adj = g.adjacency();
  std::vector<int> label(static_cast<size_t>(n), -1);
  int c = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    label[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (label[w] < 0) {
          label[w] = c;
          stack.push_back(w);
        }
    }
    ++c;
  }
  if (count) *count = c;
  return label;
}

bool is_connected(const Network& g) {
  int c = 0;
  component_labels(g, &c);
  return c <= 1;
}

namespace {

bool connected_without(const std::vector<std::vector<int>>& adj, int removed) {
  const int n = static_cast<int>(adj.size());
  int start = -1;
  for (int v = 0; v < n; ++v)
    if (v != removed) {
      start = v;
      break;
    }
  if (start < 0) return true;
  std::vector<char> seen(static_cast<size_t>(n), 0);
  seen[start] = 1;
  if (removed >= 0) seen[removed] = 1;
  std::vector<int> stack{start};
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
  return reached == n - (removed >= 0 ? 1 : 0);
}

}  // namespace

bool is_2_connected(const Network& g) {
  const int n = g.vertex_count();
  const auto adj = g.adjacency();
  if (!connected_without(adj, -1)) return false;
  if (n <= 2) return true;
  for (int v = 0; v < n; ++v)
    if (!connected_without(adj, v)) return false;
  return true;
}

bool Block::contains(int v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }

int BlockCutForest::leaf_count() const {
  return static_cast<int>(std::count_if(blocks.begin(), blocks.end(), [](const Block& b) { return b.is_leaf(); }));
}

int BlockCutForest::isolated_count() const {
  return static_cast<int>(std::count_if(blocks.begin(), blocks.end(), [](const Block& b) { return b.is_isolated(); }));
}

BlockCutForest block_cut_forest(const Network& g) {
  const int n = g.vertex_count();
  const auto adj = g.adjacency();
  std::vector<int> disc(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0);
  std::vector<Edge> estack;
  std::vector<std::vector<Edge>> edge_blocks;
  int timer = 0;

  std::function<void(int, int)> dfs = [&](int v, int parent) {
    disc[v] = low[v] = timer++;
    for (int w : adj[v]) {
      if (w == parent) continue;
      if (disc[w] < 0) {
        estack.emplace_back(v, w);
        dfs(w, v);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) {
          std::vector<Edge> blk;
          const Edge stop(v, w);
          while (true) {
            const Edge e = estack.back();
            estack.pop_back();
            blk.push_back(e);
            if (e == stop) break;
          }
          edge_blocks.push_back(std::move(blk));
        }
      } else if (disc[w] < disc[v]) {
        estack.emplace_back(v, w);
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };

  BlockCutForest f;
  f.blocks_of.assign(static_cast<size_t>(n), {});
  for (int v = 0; v < n; ++v) {
    if (disc[v] >= 0) continue;
    if (adj[v].empty()) {
      disc[v] = timer++;
      Block b;
      b.vertices = {v};
      edge_blocks.emplace_back();
      f.blocks.push_back(std::move(b));
      continue;
    }
    dfs(v, -1);
  }
  // Isolated-vertex blocks were appended to f.blocks directly; the rest come
  // from edge_blocks entries that are nonempty.
  std::vector<Block> blocks;
  size_t iso = 0;
  for (auto& eb : edge_blocks) {
    if (eb.empty()) {
      blocks.push_back(std::move(f.blocks[iso++]));
      continue;
    }
    Block b;
    std::sort(eb.begin(), eb.end());
    for (const auto& e : eb) {
      b.vertices.push_back(e.u);
      b.vertices.push_back(e.v);
    }
    std::sort(b.vertices.begin(), b.vertices.end());
    b.vertices.erase(std::unique(b.vertices.begin(), b.vertices.end()), b.vertices.end());
    b.edges = std::move(eb);
    blocks.push_back(std::move(b));
  }
  // Canonical block order: by smallest vertex, then by edge list.
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    if (a.vertices != b.vertices) return a.vertices < b.vertices;
    return a.edges < b.edges;
  });
  f.blocks = std::move(blocks);
  for (size_t i = 0; i < f.blocks.size(); ++i)
    for (int v : f.blocks[i].vertices) f.blocks_of[static_cast<size_t>(v)].push_back(static_cast<int>(i));
  for (int v = 0; v < n; ++v)
    if (f.is_cut(v)) f.cut_vertices.push_back(v);
  for (auto& b : f.blocks) {
    for (int v : b.vertices) (f.is_cut(v) ? b.cut_vertices : b.interior).push_back(v);
  }
  return f;
}

int leaf_and_isolated_counts(const Network& g) {
  const auto f = block_cut_forest(g);
  return f.leaf_count() + 2 * f.isolated_count();
}

bool is_critical_edge(const Network& g, const Edge& e) {
  if (!g.has_edge(e.u, e.v)) throw std::invalid_argument("is_critical_edge: not an edge");
  Network h = g;
  h.remove_edge(e.u, e.v);
  return !is_2_connected(h);
}

bool steiner_topology_acyclic(const Network& g) {
  // Union-find over Steiner-Steiner edges.
  std::vector<int> parent(static_cast<size_t>(g.vertex_count()));
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& e : g.edges()) {
    if (!g.is_steiner(e.u) || !g.is_steiner(e.v)) continue;
    const int a = find(e.u), b = find(e.v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

std::vector<std::vector<int>> degree_two_steiner_paths(const Network& g) {
  const auto adj = g.adjacency();
  const int n = g.vertex_count();
  auto inner = [&](int v) { return g.is_steiner(v) && adj[v].size() == 2; };
  std::vector<char> used(static_cast<size_t>(n), 0);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (!inner(s) || used[s]) continue;
    // Walk both directions from s through degree-two Steiner points.
    std::vector<int> left, right;
    auto walk = [&](int from, int next, std::vector<int>& acc) {
      int prev = from, cur = next;
      while (inner(cur) && cur != s) {
        used[cur] = 1;
        acc.push_back(cur);
        const int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = nxt;
      }
      acc.push_back(cur);
    };
    used[s] = 1;
    walk(s, adj[s][0], left);
    if (left.back() == s) continue;  // a cycle of degree-two Steiner points
    walk(s, adj[s][1], right);
    std::vector<int> path(left.rbegin(), left.rend());
    path.push_back(s);
    path.insert(path.end(), right.begin(), right.end());
    if (path.front() > path.back()) std::reverse(path.begin(), path.end());
    out.push_back(std::move(path));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Network prune_to_critical(const Network& g) {
  if (!is_2_connected(g)) throw std::invalid_argument("prune_to_critical: input is not 2-connected");
  Network cur = g;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : cur.steiner_edges()) {
      Network trial = cur;
      trial.remove_edge(e.u, e.v);
      if (is_2_connected(trial)) {
        cur = std::move(trial);
        changed = true;
        break;
      }
      // The edge may sit on a degree-two Steiner chord path.
      for (const auto& path : degree_two_steiner_paths(cur)) {
        bool on_path = false;
        for (size_t i = 0; i + 1 < path.size(); ++i)
          if (Edge(path[i], path[i + 1]) == e) on_path = true;
        if (!on_path) continue;
        Network cut = cur;
        std::vector<int> interior(path.begin() + 1, path.end() - 1);
        std::sort(interior.rbegin(), interior.rend());
        for (int v : interior) cut.remove_steiner(v);
        if (path.front() != path.back() && is_2_connected(cut)) {
          cur = std::move(cut);
          changed = true;
        }
        break;
      }
      if (changed) break;
    }
  }
  // Steiner points left without edges cannot be part of a 2-connected graph
  // on three or more vertices; drop them.
  for (int v = cur.vertex_count() - 1; v >= cur.terminal_count(); --v)
    if (cur.degree(v) == 0 && cur.vertex_count() > 1) cur.remove_steiner(v);
  return cur;
}

// ---------------------------------------------------------------------------

namespace {

bool branching_step_ok(const Network& rest, const Edge& e) {
  int comps = 0;
  const auto label = component_labels(rest, &comps);
  if (comps > 1) return label[e.u] != label[e.v];
  const auto f = block_cut_forest(rest);
  // Distinct leaf blocks whose interiors hold the two endpoints.
  int bu = -1, bv = -1;
  for (size_t i = 0; i < f.blocks.size(); ++i) {
    const auto& b = f.blocks[i];
    if (!b.is_leaf()) continue;
    if (std::binary_search(b.interior.begin(), b.interior.end(), e.u)) bu = static_cast<int>(i);
    if (std::binary_search(b.interior.begin(), b.interior.end(), e.v)) bv = static_cast<int>(i);
  }
  return bu >= 0 && bv >= 0 && bu != bv;
}

}  // namespace

std::optional<std::vector<Edge>> find_branching_decomposition(const Network& n, const Network& g_un) {
  for (const auto& e : g_un.edges())
    if (!n.has_edge(e.u, e.v)) throw std::invalid_argument("network does not contain the underlying network");
  std::vector<Edge> extra;
  for (const auto& e : n.edges())
    if (!g_un.has_edge(e.u, e.v)) extra.push_back(e);
  const int m = static_cast<int>(extra.size());
  if (m > 24) throw std::invalid_argument("too many Steiner edges for the branching search");

  std::unordered_set<unsigned> dead;
  std::vector<Edge> order;
  std::function<bool(unsigned)> search = [&](unsigned removed) -> bool {
    if (removed == (m == 32 ? ~0u : ((1u << m) - 1u))) return true;
    if (dead.count(removed)) return false;
    const int j = static_cast<int>(order.size()) + 1;
    for (int i = 0; i < m; ++i) {
      if (removed & (1u << i)) continue;
      Network rest = n;
      for (int q = 0; q < m; ++q)
        if ((removed & (1u << q)) || q == i) rest.remove_edge(extra[q].u, extra[q].v);
      int comps = 0;
      component_labels(rest, &comps);
      if (comps > 1 && j == 1) {
        // Condition 2 applies from j = 2; a bridge first step is unconstrained.
      } else if (!branching_step_ok(rest, extra[i])) {
        continue;
      }
      order.push_back(extra[i]);
      if (search(removed | (1u << i))) return true;
      order.pop_back();
    }
    dead.insert(removed);
    return false;
  };
  if (!search(0u)) return std::nullopt;
  return order;
}

}  // namespace bsn
