#include "bsn/placement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "convex_minimax.hpp"

namespace bsn {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ClassRef {
  int node = 0;  // local node index
  int pair = 0;  // index into t.pairs
  std::vector<int> ids;
  std::vector<Point> pts;
};

struct Component {
  std::vector<int> nodes;                      // Steiner ids, ascending
  std::vector<std::vector<int>> tree;          // local adjacency
  std::vector<std::pair<int, int>> tree_edges; // local index pairs
  std::vector<std::pair<int, int>> internal_pairs;  // (pair index, local a)
  std::vector<ClassRef> classes;
};

struct ComponentResult {
  std::vector<Point> positions;
  std::vector<std::pair<int, int>> endpoints;  // (pair index, endpoint id)
};

int local_index(const Component& c, int id) {
  return static_cast<int>(std::lower_bound(c.nodes.begin(), c.nodes.end(), id) - c.nodes.begin());
}

std::vector<Component> decompose(const CandidateType& t, const Metric& m) {
  const Network& base = t.base;
  const int n = base.terminal_count();
  const int k = base.steiner_count();
  int count = 0;
  const auto label = steiner_components(t, &count);

  std::vector<int> deg(static_cast<size_t>(k), 0);
  for (const auto& p : t.pairs) {
    if (!base.is_steiner(p.s)) throw std::invalid_argument("pair owner is not a Steiner point");
    if (p.y.empty()) throw std::invalid_argument("empty endpoint class");
    ++deg[p.s - n];
    if (p.y.size() == 1 && base.is_steiner(p.y[0])) ++deg[p.y[0] - n];
  }
  for (int d : deg)
    if (d > m.max_steiner_degree()) throw std::invalid_argument("Steiner degree bound exceeded");

  std::vector<Component> comps(static_cast<size_t>(count));
  for (int i = 0; i < k; ++i) comps[label[i]].nodes.push_back(n + i);
  for (auto& c : comps) c.tree.assign(c.nodes.size(), {});
  for (size_t i = 0; i < t.pairs.size(); ++i) {
    const auto& p = t.pairs[i];
    auto& c = comps[label[p.s - n]];
    const int a = local_index(c, p.s);
    if (p.y.size() == 1 && base.is_steiner(p.y[0])) {
      const int b = local_index(c, p.y[0]);
      c.tree[a].push_back(b);
      c.tree[b].push_back(a);
      c.tree_edges.emplace_back(a, b);
      c.internal_pairs.emplace_back(static_cast<int>(i), a);
      continue;
    }
    ClassRef cr{a, static_cast<int>(i), p.y, {}};
    for (int v : p.y) {
      if (!base.is_terminal(v)) throw std::invalid_argument("mixed endpoint class");
      cr.pts.push_back(*base.position(v));
    }
    c.classes.push_back(std::move(cr));
  }
  for (const auto& c : comps)
    if (c.tree_edges.size() + 1 != c.nodes.size()) throw std::invalid_argument("Steiner topology has a cycle");
  return comps;
}

size_t nearest(const std::vector<Point>& pts, Point c, const Metric& m) {
  size_t best = 0;
  double bd = kInf;
  for (size_t i = 0; i < pts.size(); ++i) {
    const double d = distance(pts[i], c, m);
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return best;
}

void choose_nearest(const Component& c, const Metric& m, ComponentResult& r) {
  for (const auto& cl : c.classes)
    r.endpoints.emplace_back(cl.pair, cl.ids[nearest(cl.pts, r.positions[cl.node], m)]);
}

Rect class_box(const Component& c, const Metric& m) {
  Rect box{kInf, -kInf, kInf, -kInf};
  for (const auto& cl : c.classes)
    for (const auto& p : cl.pts) {
      const Point q = to_square_frame(p, m);
      box.xlo = std::min(box.xlo, q.x);
      box.xhi = std::max(box.xhi, q.x);
      box.ylo = std::min(box.ylo, q.y);
      box.yhi = std::max(box.yhi, q.y);
    }
  return box;
}

double class_diameter(const Component& c, const Metric& m) {
  std::vector<Point> all;
  for (const auto& cl : c.classes) all.insert(all.end(), cl.pts.begin(), cl.pts.end());
  double d = 0.0;
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j) d = std::max(d, distance(all[i], all[j], m));
  return d;
}

// --- L1 and L-infinity: exact region propagation in the square frame. ---

struct SquareSolver {
  const Component& c;
  const Metric& m;
  Rect box;
  int root = 0;
  std::vector<int> parent;
  std::vector<int> order;  // parents before children

  SquareSolver(const Component& comp, const Metric& metric) : c(comp), m(metric), box(class_box(comp, metric)) {
    const int nn = static_cast<int>(c.nodes.size());
    parent.assign(static_cast<size_t>(nn), -1);
    std::vector<char> seen(static_cast<size_t>(nn), 0);
    order.push_back(root);
    seen[root] = 1;
    for (size_t i = 0; i < order.size(); ++i)
      for (int w : c.tree[order[i]])
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = order[i];
          order.push_back(w);
        }
  }

  std::vector<RectUnion> regions(double lambda) const {
    std::vector<RectUnion> r(c.nodes.size(), RectUnion(box));
    for (const auto& cl : c.classes) {
      RectUnion u;
      for (const auto& p : cl.pts) u.add(Rect::square(to_square_frame(p, m), lambda));
      r[cl.node] = r[cl.node].intersect(u);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int v = *it;
      if (parent[v] >= 0) r[parent[v]] = r[parent[v]].intersect(r[v].inflate(lambda));
    }
    return r;
  }

  bool feasible(double lambda) const { return !regions(lambda)[root].empty(); }

  std::vector<Point> extract(double lambda) const {
    const auto r = regions(lambda);
    std::vector<Point> frame(c.nodes.size());
    std::vector<Point> out(c.nodes.size());
    for (int v : order) {
      RectUnion here = r[v];
      // The slack absorbs rounding where a child region only touches the
      // parent's square.
      if (parent[v] >= 0)
        here = here.intersect(RectUnion(Rect::square(frame[parent[v]], lambda * (1 + 1e-12) + 1e-12)));
      const auto& rects = here.rects();
      if (rects.empty()) throw std::logic_error("region propagation lost feasibility");
      // Lexicographic minimum in the original frame.
      Point best = from_square_frame({rects[0].xlo, rects[0].ylo}, m);
      Point best_frame{rects[0].xlo, rects[0].ylo};
      for (const auto& rc : rects) {
        const Point q{rc.xlo, rc.ylo};
        const Point p = from_square_frame(q, m);
        if (p < best) {
          best = p;
          best_frame = q;
        }
      }
      frame[v] = best_frame;
      out[v] = best;
    }
    return out;
  }
};

ComponentResult solve_square(const Component& c, const Metric& m) {
  ComponentResult r;
  if (c.classes.empty()) {
    r.positions.assign(c.nodes.size(), Point{});
    return r;
  }
  SquareSolver solver(c, m);
  double lo = 0.0, hi = class_diameter(c, m);
  if (!solver.feasible(0.0)) {
    for (int it = 0; it < 200; ++it) {
      const double mid = lo + (hi - lo) / 2.0;
      if (mid <= lo || mid >= hi) break;
      (solver.feasible(mid) ? hi : lo) = mid;
    }
  } else {
    hi = 0.0;
  }
  r.positions = solver.extract(hi);
  choose_nearest(c, m, r);
  return r;
}

// --- Other metrics: branch and bound over endpoint choices. ---

ComponentResult solve_convex(const Component& c, const Metric& m) {
  ComponentResult r;
  const int nn = static_cast<int>(c.nodes.size());
  if (c.classes.empty()) {
    r.positions.assign(c.nodes.size(), Point{});
    return r;
  }
  if (nn == 1) {
    ColourClasses cc;
    for (const auto& cl : c.classes) cc.push_back(cl.pts);
    const Disk d = smallest_colour_spanning_disk(cc, m);
    r.positions = {d.center};
    choose_nearest(c, m, r);
    return r;
  }

  Rect box{kInf, -kInf, kInf, -kInf};
  for (const auto& cl : c.classes)
    for (const auto& p : cl.pts) {
      box.xlo = std::min(box.xlo, p.x);
      box.xhi = std::max(box.xhi, p.x);
      box.ylo = std::min(box.ylo, p.y);
      box.yhi = std::max(box.yhi, p.y);
    }

  // Branch on larger classes last so that early bounds are cheap and tight.
  std::vector<size_t> order(c.classes.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return c.classes[a].pts.size() < c.classes[b].pts.size(); });

  std::vector<detail::MinimaxTerm> terms;
  for (const auto& [a, b] : c.tree_edges) terms.push_back({a, b, {}});
  std::vector<size_t> choice(c.classes.size(), 0);
  double best = kInf;
  std::vector<Point> best_pos;
  std::vector<size_t> best_choice;

  std::function<void(size_t, const std::vector<Point>&)> branch = [&](size_t depth, const std::vector<Point>& hint) {
    if (depth == order.size()) return;
    const auto& cl = c.classes[order[depth]];
    std::vector<size_t> cand(cl.pts.size());
    std::iota(cand.begin(), cand.end(), size_t{0});
    std::stable_sort(cand.begin(), cand.end(), [&](size_t a, size_t b) {
      return distance(cl.pts[a], hint[cl.node], m) < distance(cl.pts[b], hint[cl.node], m);
    });
    for (size_t ci : cand) {
      terms.push_back({cl.node, -1, cl.pts[ci]});
      choice[order[depth]] = ci;
      const auto res = detail::minimize_max_distance(nn, terms, m, box);
      if (res.lower_bound < best * (1.0 - 1e-12)) {
        if (depth + 1 == order.size()) {
          if (res.value < best) {
            best = res.value;
            best_pos = res.positions;
            best_choice = choice;
          }
        } else {
          branch(depth + 1, res.positions);
        }
      }
      terms.pop_back();
    }
  };
  const Point mid{(box.xlo + box.xhi) / 2.0, (box.ylo + box.yhi) / 2.0};
  branch(0, std::vector<Point>(static_cast<size_t>(nn), mid));

  r.positions = best_pos;
  for (size_t i = 0; i < c.classes.size(); ++i)
    r.endpoints.emplace_back(c.classes[i].pair, c.classes[i].ids[best_choice[i]]);
  return r;
}

}  // namespace

std::vector<int> steiner_components(const CandidateType& t, int* count) {
  const int n = t.base.terminal_count();
  const int k = t.base.steiner_count();
  std::vector<int> parent(static_cast<size_t>(k));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& p : t.pairs)
    if (p.y.size() == 1 && t.base.is_steiner(p.y[0])) {
      const int a = find(p.s - n), b = find(p.y[0] - n);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<int> label(static_cast<size_t>(k), -1), root_label(static_cast<size_t>(k), -1);
  int c = 0;
  for (int i = 0; i < k; ++i) {
    const int r = find(i);
    if (root_label[r] < 0) root_label[r] = c++;
    label[i] = root_label[r];
  }
  if (count) *count = c;
  return label;
}

PlacementResult optimize_placement(const CandidateType& t, const Metric& m) {
  const auto comps = decompose(t, m);
  const int n = t.base.terminal_count();
  PlacementResult out;
  out.steiner_positions.assign(static_cast<size_t>(t.base.steiner_count()), Point{});
  out.endpoints.assign(t.pairs.size(), -1);
  for (const auto& c : comps) {
    ComponentResult r = m.is_polygonal() ? solve_square(c, m) : solve_convex(c, m);
    for (size_t i = 0; i < c.nodes.size(); ++i) out.steiner_positions[c.nodes[i] - n] = r.positions[i];
    for (const auto& [pair, id] : r.endpoints) out.endpoints[pair] = id;
    for (const auto& [pair, a] : c.internal_pairs) out.endpoints[pair] = t.pairs[pair].y[0];
  }
  out.network = representative(t, out.endpoints);
  for (int i = 0; i < t.base.steiner_count(); ++i) out.network.set_position(n + i, out.steiner_positions[i]);
  out.bottleneck = out.network.edges().empty() ? 0.0 : out.network.bottleneck(m);
  return out;
}

bool placement_feasible(const CandidateType& t, const Metric& m, double lambda) {
  if (lambda < 0.0) return false;
  return optimize_placement(t, m).bottleneck <= lambda + 1e-12 * std::max(1.0, lambda);
}

}  // namespace bsn
