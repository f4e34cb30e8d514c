#include "bsn/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bsn {

std::vector<double> distance_levels(const std::vector<Point>& terminals, const Metric& m) {
  if (terminals.size() < 2) throw std::invalid_argument("at least two terminals are required");
  std::vector<double> all;
  for (size_t i = 0; i < terminals.size(); ++i)
    for (size_t j = i + 1; j < terminals.size(); ++j) all.push_back(distance(terminals[i], terminals[j], m));
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double d : all) {
    // A tied group is represented by its largest member so that the closed
    // threshold admits every pair of the group.
    if (!out.empty() && d - out.back() <= 1e-12 * std::max(1.0, std::abs(d)))
      out.back() = d;
    else
      out.push_back(d);
  }
  return out;
}

Network threshold_graph(const std::vector<Point>& terminals, const Metric& m, double level) {
  const int n = static_cast<int>(terminals.size());
  Network g(n, 0);
  for (int i = 0; i < n; ++i) g.set_position(i, terminals[i]);
  if (level <= 0.0) return g;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (distance(terminals[i], terminals[j], m) <= level) g.add_edge(i, j);
  return g;
}

std::vector<int> compute_V_CV(const BlockCutForest& bcf) {
  std::vector<int> out;
  for (int v : bcf.cut_vertices) {
    const auto& bl = bcf.blocks_of[static_cast<size_t>(v)];
    bool member = bl.size() >= 3;
    for (int b : bl)
      if (bcf.blocks[static_cast<size_t>(b)].bcf_degree() != 2) member = true;
    if (member) out.push_back(v);
  }
  return out;
}

std::vector<ValidSubset> valid_subset_partition(const Network& g, const BlockCutForest& bcf) {
  const int n = g.terminal_count();
  const auto vcv = compute_V_CV(bcf);
  auto in_vcv = [&](int v) { return std::binary_search(vcv.begin(), vcv.end(), v); };
  std::vector<ValidSubset> out;

  for (const auto& b : bcf.blocks) {
    if (b.is_isolated()) {
      out.push_back({SubsetKind::isolated_block, b.vertices, {}});
    } else if (b.is_leaf()) {
      out.push_back({SubsetKind::leaf_interior, b.interior, {}});
    } else if (b.bcf_degree() >= 3 && !b.interior.empty()) {
      out.push_back({SubsetKind::junction_interior, b.interior, {}});
    }
  }
  for (int v : vcv) out.push_back({SubsetKind::cut_singleton, {v}, {}});

  // Degree-two block paths: maximal chains of degree-two blocks linked
  // through cut vertices outside V_CV.
  const int nb = static_cast<int>(bcf.blocks.size());
  std::vector<char> seen(static_cast<size_t>(nb), 0);
  for (int start = 0; start < nb; ++start) {
    if (seen[start] || bcf.blocks[start].bcf_degree() != 2) continue;
    std::vector<int> comp{start};
    seen[start] = 1;
    for (size_t i = 0; i < comp.size(); ++i) {
      for (int c : bcf.blocks[comp[i]].cut_vertices) {
        if (in_vcv(c)) continue;
        for (int nbk : bcf.blocks_of[static_cast<size_t>(c)])
          if (!seen[nbk] && bcf.blocks[nbk].bcf_degree() == 2) {
            seen[nbk] = 1;
            comp.push_back(nbk);
          }
      }
    }
    // Order the chain from one end: an end block has at most one neighbour
    // inside the chain.
    auto chain_neighbours = [&](int b) {
      std::vector<int> nbrs;
      for (int c : bcf.blocks[b].cut_vertices) {
        if (in_vcv(c)) continue;
        for (int o : bcf.blocks_of[static_cast<size_t>(c)])
          if (o != b && std::find(comp.begin(), comp.end(), o) != comp.end()) nbrs.push_back(o);
      }
      return nbrs;
    };
    int first = *std::min_element(comp.begin(), comp.end());
    for (int b : comp)
      if (chain_neighbours(b).size() <= 1) {
        first = b;
        break;
      }
    std::vector<int> ordered{first};
    while (ordered.size() < comp.size()) {
      for (int o : chain_neighbours(ordered.back()))
        if (std::find(ordered.begin(), ordered.end(), o) == ordered.end()) {
          ordered.push_back(o);
          break;
        }
    }
    std::vector<int> members;
    for (int b : ordered)
      for (int v : bcf.blocks[b].vertices)
        if (!in_vcv(v)) members.push_back(v);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (!members.empty()) out.push_back({SubsetKind::path_interior, std::move(members), std::move(ordered)});
  }

  std::erase_if(out, [](const ValidSubset& s) { return s.members.empty(); });
  std::sort(out.begin(), out.end(), [](const ValidSubset& a, const ValidSubset& b) { return a.members < b.members; });

  std::vector<int> count(static_cast<size_t>(n), 0);
  for (const auto& s : out)
    for (int v : s.members) ++count[static_cast<size_t>(v)];
  for (int v = 0; v < n; ++v)
    if (count[v] != 1) throw std::logic_error("valid subsets do not partition the terminals");
  return out;
}

UnderlyingNetwork underlying_network(const Network& terminal_part, double level, int k) {
  if (k < 0) throw std::invalid_argument("negative Steiner budget");
  UnderlyingNetwork u;
  u.level = level;
  u.steiner = k;
  u.bcf = block_cut_forest(terminal_part);
  u.valid_subsets = valid_subset_partition(terminal_part, u.bcf);
  const int n = terminal_part.vertex_count();
  u.subset_of.assign(static_cast<size_t>(n), -1);
  for (size_t i = 0; i < u.valid_subsets.size(); ++i)
    for (int v : u.valid_subsets[i].members) u.subset_of[static_cast<size_t>(v)] = static_cast<int>(i);
  u.component_of = component_labels(terminal_part, &u.component_count);
  u.base = Network(n, k);
  for (int i = 0; i < n; ++i)
    if (const auto& p = terminal_part.position(i)) u.base.set_position(i, *p);
  for (const auto& e : terminal_part.edges()) u.base.add_edge(e.u, e.v);
  return u;
}

UnderlyingNetwork threshold_network(const std::vector<Point>& terminals, const Metric& m, double level, int k) {
  if (k < 0) throw std::invalid_argument("negative Steiner budget");
  Network t = threshold_graph(terminals, m, level);
  for (size_t i = 0; i < terminals.size(); ++i) t.set_position(static_cast<int>(i), terminals[i]);
  return underlying_network(t, level, k);
}

}  // namespace bsn
