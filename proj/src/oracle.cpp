#include "bsn/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace bsn {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Ball {
  Point c;
  double r = 0.0;
};

// Minimiser of a convex function on [lo, hi]: grid seed, then golden section
// inside the bracket around the best grid point.
template <class F>
std::pair<double, double> line_min(F&& f, double lo, double hi, const OracleConfig& cfg) {
  const int steps = std::max(2, static_cast<int>(std::ceil(1.0 / cfg.placement_grid_resolution)));
  const double h = (hi - lo) / steps;
  int best_i = 0;
  double best_v = kInf;
  for (int i = 0; i <= steps; ++i) {
    const double v = f(lo + h * i);
    if (v < best_v) {
      best_v = v;
      best_i = i;
    }
  }
  if (h == 0.0) return {lo, best_v};
  double a = lo + h * std::max(0, best_i - 1), b = lo + h * std::min(steps, best_i + 1);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < cfg.refinement_iters; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = f1 <= f2 ? x1 : x2;
  const double vm = std::min(f1, f2);
  return vm <= best_v ? std::make_pair(xm, vm) : std::make_pair(lo + h * best_i, best_v);
}

struct Box {
  double xlo, xhi, ylo, yhi;
};

template <class F>
std::pair<Point, double> plane_min(F&& f, const Box& box, const OracleConfig& cfg) {
  auto inner = [&](double x) { return line_min([&](double y) { return f(Point{x, y}); }, box.ylo, box.yhi, cfg); };
  const auto [x, v] = line_min([&](double x) { return inner(x).second; }, box.xlo, box.xhi, cfg);
  return {Point{x, inner(x).first}, v};
}

class OraclePlacer {
 public:
  OraclePlacer(const Metric& m, const OracleConfig& cfg, Box box) : m_(m), cfg_(cfg), box_(box) {}

  double dist(Point a, Point b) const {
    const double dx = std::abs(a.x - b.x), dy = std::abs(a.y - b.y);
    if (m_.is_linf()) return std::max(dx, dy);
    if (m_.is_l1()) return dx + dy;
    if (m_.is_l2()) return std::hypot(dx, dy);
    return std::pow(std::pow(dx, m_.p()) + std::pow(dy, m_.p()), 1.0 / m_.p());
  }

  Ball ball(const std::vector<Point>& pts) const {
    if (pts.empty()) return {};
    if (m_.is_linf() || m_.is_l1()) return square_ball(pts);
    if (m_.is_l2()) return euclidean_ball(pts);
    auto f = [&](Point c) {
      double r = 0;
      for (const auto& q : pts) r = std::max(r, dist(c, q));
      return r;
    };
    const auto [c, r] = plane_min(f, bounds(pts), cfg_);
    return {c, r};
  }

  /// Star with centre terminals `yc` and one leaf per entry of `leaves`.
  std::pair<double, std::vector<Point>> star(const std::vector<Point>& yc,
                                             const std::vector<std::vector<Point>>& leaves) const {
    if (leaves.empty()) {
      const Ball b = ball(yc);
      return {b.r, {b.c}};
    }
    auto f = [&](Point c) {
      double r = 0;
      for (const auto& q : yc) r = std::max(r, dist(c, q));
      for (auto pts : leaves) {
        pts.push_back(c);
        r = std::max(r, ball(pts).r);
      }
      return r;
    };
    const auto [c, v] = plane_min(f, box_, cfg_);
    std::vector<Point> pos{c};
    for (auto pts : leaves) {
      pts.push_back(c);
      pos.push_back(ball(pts).c);
    }
    return {v, pos};
  }

 private:
  static Box bounds(const std::vector<Point>& pts) {
    Box b{kInf, -kInf, kInf, -kInf};
    for (const auto& q : pts) {
      b.xlo = std::min(b.xlo, q.x);
      b.xhi = std::max(b.xhi, q.x);
      b.ylo = std::min(b.ylo, q.y);
      b.yhi = std::max(b.yhi, q.y);
    }
    return b;
  }

  Ball square_ball(const std::vector<Point>& pts) const {
    // L1 becomes L-infinity under (x + y, x - y).
    const bool rot = m_.is_l1();
    std::vector<Point> q;
    for (const auto& p : pts) q.push_back(rot ? Point{p.x + p.y, p.x - p.y} : p);
    const Box b = bounds(q);
    const double r = std::max(b.xhi - b.xlo, b.yhi - b.ylo) / 2.0;
    Point c{(b.xlo + b.xhi) / 2.0, (b.ylo + b.yhi) / 2.0};
    if (rot) c = Point{(c.x + c.y) / 2.0, (c.x - c.y) / 2.0};
    return {c, r};
  }

  // Smallest of the circles through two or three of the points that covers
  // all of them.
  Ball euclidean_ball(const std::vector<Point>& pts) const {
    const size_t n = pts.size();
    if (n == 1) return {pts[0], 0.0};
    auto covers = [&](const Ball& b) {
      for (const auto& q : pts)
        if (std::hypot(q.x - b.c.x, q.y - b.c.y) > b.r * (1 + 1e-12) + 1e-12) return false;
      return true;
    };
    Ball best{{}, kInf};
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        const Ball b{{(pts[i].x + pts[j].x) / 2, (pts[i].y + pts[j].y) / 2},
                     std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y) / 2};
        if (b.r < best.r && covers(b)) best = b;
        for (size_t k = j + 1; k < n; ++k) {
          const Point a = pts[i], p = pts[j], q = pts[k];
          const double d = 2 * (a.x * (p.y - q.y) + p.x * (q.y - a.y) + q.x * (a.y - p.y));
          if (std::abs(d) < 1e-14) continue;
          const double a2 = a.x * a.x + a.y * a.y, p2 = p.x * p.x + p.y * p.y, q2 = q.x * q.x + q.y * q.y;
          const Point c{(a2 * (p.y - q.y) + p2 * (q.y - a.y) + q2 * (a.y - p.y)) / d,
                        (a2 * (q.x - p.x) + p2 * (a.x - q.x) + q2 * (p.x - a.x)) / d};
          const Ball t{c, std::max({std::hypot(a.x - c.x, a.y - c.y), std::hypot(p.x - c.x, p.y - c.y),
                                    std::hypot(q.x - c.x, q.y - c.y)})};
          if (t.r < best.r && covers(t)) best = t;
        }
      }
    if (best.r == kInf) {  // all points coincide
      best = {pts[0], 0.0};
    }
    return best;
  }

  const Metric& m_;
  const OracleConfig& cfg_;
  Box box_;
};

struct Topology {
  int k = 0;
  std::vector<std::pair<int, int>> steiner_edges;  // between Steiner indices
  std::vector<unsigned> masks;                     // terminal neighbours per Steiner point
};

bool acyclic(int k, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(static_cast<size_t>(k));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  for (auto [a, b] : edges) {
    const int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  return true;
}

// Lexicographically smallest relabelling of the Steiner points.
bool is_canonical(const Topology& t) {
  std::vector<int> perm(static_cast<size_t>(t.k));
  std::iota(perm.begin(), perm.end(), 0);
  auto key = [&](const std::vector<int>& p) {
    std::vector<std::pair<int, int>> e;
    for (auto [a, b] : t.steiner_edges) e.emplace_back(std::min(p[a], p[b]), std::max(p[a], p[b]));
    std::sort(e.begin(), e.end());
    std::vector<unsigned> m(t.masks.size());
    for (int i = 0; i < t.k; ++i) m[static_cast<size_t>(p[i])] = t.masks[static_cast<size_t>(i)];
    return std::make_pair(e, m);
  };
  const auto mine = key(perm);
  while (std::next_permutation(perm.begin(), perm.end()))
    if (key(perm) < mine) return false;
  return true;
}

class Search {
 public:
  Search(const Instance& inst, const OracleConfig& cfg)
      : inst_(inst), n_(static_cast<int>(inst.terminals.size())), placer_(inst.metric, cfg, box(inst)) {
    std::vector<double> d;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) d.push_back(placer_.dist(inst.terminals[i], inst.terminals[j]));
    std::sort(d.begin(), d.end());
    levels_.push_back(0.0);
    for (double v : d)
      if (v > levels_.back() * (1 + 1e-12)) levels_.push_back(v);
      else levels_.back() = std::max(levels_.back(), v);
  }

  Solution run() {
    // k = 0 incumbent: the smallest 2-connected threshold graph.
    const int d0 = min_level({});
    best_value_ = levels_[static_cast<size_t>(d0)];
    best_ = {Topology{}, d0, {}};
    for (int kk = 1; kk <= inst_.k; ++kk) enumerate(kk);
    return realise();
  }

 private:
  struct Incumbent {
    Topology t;
    int level = 0;
    std::vector<Point> positions;
  };

  static Box box(const Instance& inst) {
    Box b{kInf, -kInf, kInf, -kInf};
    for (const auto& q : inst.terminals) {
      b.xlo = std::min(b.xlo, q.x);
      b.xhi = std::max(b.xhi, q.x);
      b.ylo = std::min(b.ylo, q.y);
      b.yhi = std::max(b.yhi, q.y);
    }
    return b;
  }

  Network graph(const Topology& t, int level) const {
    Network g(n_, t.k);
    const double lv = levels_[static_cast<size_t>(level)];
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (placer_.dist(inst_.terminals[i], inst_.terminals[j]) <= lv && lv > 0) g.add_edge(i, j);
    for (auto [a, b] : t.steiner_edges) g.add_edge(n_ + a, n_ + b);
    for (int s = 0; s < t.k; ++s)
      for (int x = 0; x < n_; ++x)
        if (t.masks[static_cast<size_t>(s)] >> x & 1u) g.add_edge(n_ + s, x);
    return g;
  }

  // Smallest level at which the topology is 2-connected, or levels.size().
  int min_level(const Topology& t) const {
    int lo = 0, hi = static_cast<int>(levels_.size());
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (is_2_connected(graph(t, mid))) hi = mid;
      else lo = mid + 1;
    }
    return lo;
  }

  std::vector<Point> terminals_of(unsigned mask) const {
    std::vector<Point> out;
    for (int x = 0; x < n_; ++x)
      if (mask >> x & 1u) out.push_back(inst_.terminals[static_cast<size_t>(x)]);
    return out;
  }

  // Steiner components of a forest on at most three points are stars.
  struct Star {
    int centre;
    std::vector<int> leaves;
  };
  std::vector<Star> stars(const Topology& t) const {
    std::vector<std::vector<int>> adj(static_cast<size_t>(t.k));
    for (auto [a, b] : t.steiner_edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<char> done(static_cast<size_t>(t.k), 0);
    std::vector<Star> out;
    for (int s = 0; s < t.k; ++s) {
      if (done[s]) continue;
      std::vector<int> comp{s};
      done[s] = 1;
      for (size_t i = 0; i < comp.size(); ++i)
        for (int w : adj[comp[i]])
          if (!done[w]) {
            done[w] = 1;
            comp.push_back(w);
          }
      int centre = comp[0];
      for (int v : comp)
        if (adj[v].size() > adj[centre].size()) centre = v;
      Star st{centre, {}};
      for (int v : comp)
        if (v != centre) st.leaves.push_back(v);
      out.push_back(st);
    }
    return out;
  }

  double lower_bound(const Topology& t) const {
    double lb = 0;
    for (const auto& st : stars(t)) {
      auto all = terminals_of(t.masks[st.centre]);
      lb = std::max(lb, placer_.ball(all).r);
      for (int l : st.leaves) {
        const auto pts = terminals_of(t.masks[l]);
        lb = std::max(lb, placer_.ball(pts).r);
        all.insert(all.end(), pts.begin(), pts.end());
      }
      lb = std::max(lb, placer_.ball(all).r / 2.0);
    }
    return lb;
  }

  std::pair<double, std::vector<Point>> place(const Topology& t) const {
    std::vector<Point> pos(static_cast<size_t>(t.k));
    double value = 0;
    for (const auto& st : stars(t)) {
      std::vector<std::vector<Point>> leaves;
      for (int l : st.leaves) leaves.push_back(terminals_of(t.masks[l]));
      const auto [v, p] = placer_.star(terminals_of(t.masks[st.centre]), leaves);
      value = std::max(value, v);
      pos[st.centre] = p[0];
      for (size_t i = 0; i < st.leaves.size(); ++i) pos[st.leaves[i]] = p[i + 1];
    }
    return {value, pos};
  }

  void consider(const Topology& t) {
    if (!is_canonical(t)) return;
    const int level = min_level(t);
    if (level >= static_cast<int>(levels_.size())) return;
    const double lv = levels_[static_cast<size_t>(level)];
    if (lv >= best_value_) return;
    if (lower_bound(t) >= best_value_) return;
    auto [v, pos] = place(t);
    const double value = std::max(lv, v);
    if (value < best_value_) {
      best_value_ = value;
      best_ = {t, level, std::move(pos)};
    }
  }

  void enumerate(int kk) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < kk; ++a)
      for (int b = a + 1; b < kk; ++b) pairs.emplace_back(a, b);
    const int delta = inst_.metric.max_steiner_degree();
    for (unsigned es = 0; es < (1u << pairs.size()); ++es) {
      Topology t;
      t.k = kk;
      for (size_t i = 0; i < pairs.size(); ++i)
        if (es >> i & 1u) t.steiner_edges.push_back(pairs[i]);
      if (!acyclic(kk, t.steiner_edges)) continue;
      std::vector<int> sdeg(static_cast<size_t>(kk), 0);
      for (auto [a, b] : t.steiner_edges) ++sdeg[a], ++sdeg[b];
      t.masks.assign(static_cast<size_t>(kk), 0);
      std::function<void(int)> assign = [&](int s) {
        if (s == kk) {
          consider(t);
          return;
        }
        for (unsigned m = 0; m < (1u << n_); ++m) {
          const int deg = std::popcount(m) + sdeg[s];
          if (deg < 2 || deg > delta) continue;
          t.masks[s] = m;
          assign(s + 1);
        }
      };
      assign(0);
    }
  }

  Solution realise() const {
    Network g = graph(best_.t, best_.level);
    for (int i = 0; i < n_; ++i) g.set_position(i, inst_.terminals[static_cast<size_t>(i)]);
    for (int s = 0; s < best_.t.k; ++s) g.set_position(n_ + s, best_.positions[static_cast<size_t>(s)]);
    Solution out;
    out.bottleneck = g.bottleneck(inst_.metric);
    out.network = std::move(g);
    out.steiner_count = best_.t.k;
    out.threshold_used = levels_[static_cast<size_t>(best_.level)];
    return out;
  }

  const Instance& inst_;
  int n_;
  OraclePlacer placer_;
  std::vector<double> levels_;
  double best_value_ = kInf;
  Incumbent best_;
};

}  // namespace

Solution naive_solve(const Instance& inst, const OracleConfig& cfg) {
  inst.validate();
  if (cfg.max_k > 3) throw std::invalid_argument("oracle supports at most three Steiner points");
  if (!(cfg.placement_grid_resolution > 0)) throw std::invalid_argument("grid resolution must be positive");
  if (static_cast<int>(inst.terminals.size()) > cfg.max_n)
    throw OracleBoundsError("instance has more terminals than the oracle allows");
  if (inst.k > cfg.max_k) throw OracleBoundsError("Steiner budget exceeds the oracle bound");
  const auto start = std::chrono::steady_clock::now();
  Solution s = Search(inst, cfg).run();
  s.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

}  // namespace bsn
