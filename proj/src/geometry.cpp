#include "bsn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "convex_minimax.hpp"

namespace bsn {

Metric Metric::lp(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("metric exponent must satisfy p >= 1");
  return Metric(p);
}

double norm(double dx, double dy, const Metric& m) {
  dx = std::abs(dx);
  dy = std::abs(dy);
  if (m.is_l2()) return std::hypot(dx, dy);
  if (m.is_l1()) return dx + dy;
  if (m.is_linf()) return std::max(dx, dy);
  const double hi = std::max(dx, dy);
  if (hi == 0.0) return 0.0;
  const double p = m.p();
  return hi * std::pow(std::pow(dx / hi, p) + std::pow(dy / hi, p), 1.0 / p);
}

double distance(Point a, Point b, const Metric& m) { return norm(a.x - b.x, a.y - b.y, m); }

// ---------------------------------------------------------------------------
// Square frame and rectangle unions.

Point to_square_frame(Point p, const Metric& m) {
  if (m.is_l1()) return {p.x + p.y, p.x - p.y};
  return p;
}

Point from_square_frame(Point q, const Metric& m) {
  if (m.is_l1()) return {(q.x + q.y) / 2.0, (q.x - q.y) / 2.0};
  return q;
}

void RectUnion::add(const Rect& r) {
  if (r.empty()) return;
  for (const auto& e : rects_)
    if (e.contains(r)) return;
  std::erase_if(rects_, [&](const Rect& e) { return r.contains(e); });
  rects_.push_back(r);
}

RectUnion RectUnion::intersect(const RectUnion& other) const {
  RectUnion out;
  for (const auto& a : rects_) {
    for (const auto& b : other.rects_) {
      out.add({std::max(a.xlo, b.xlo), std::min(a.xhi, b.xhi), std::max(a.ylo, b.ylo),
               std::min(a.yhi, b.yhi)});
    }
  }
  return out;
}

RectUnion RectUnion::inflate(double delta) const {
  RectUnion out;
  for (const auto& r : rects_) out.add({r.xlo - delta, r.xhi + delta, r.ylo - delta, r.yhi + delta});
  return out;
}

std::optional<Point> RectUnion::lexicographic_min(const Metric& m) const {
  std::optional<Point> best;
  for (const auto& r : rects_) {
    const Point p = from_square_frame({r.xlo, r.ylo}, m);
    if (!best || p < *best) best = p;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Enclosing balls.

namespace {

constexpr double kRelEps = 1e-12;

double point_scale(std::span<const Point> pts) {
  double s = 1.0;
  for (const auto& p : pts) s = std::max({s, std::abs(p.x), std::abs(p.y)});
  return s;
}

bool inside(const Disk& d, Point p, double scale) {
  return std::hypot(p.x - d.center.x, p.y - d.center.y) <= d.radius * (1.0 + kRelEps) + kRelEps * scale;
}

Disk circle_two(Point a, Point b) {
  return {{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}, std::hypot(a.x - b.x, a.y - b.y) / 2.0};
}

Disk circle_three(Point a, Point b, Point c) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  if (std::abs(d) < 1e-300) {
    // Collinear: the farthest pair spans the disk.
    Disk best = circle_two(a, b);
    for (const Disk& cand : {circle_two(a, c), circle_two(b, c)})
      if (cand.radius > best.radius) best = cand;
    return best;
  }
  const double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  const double ux = (cy * b2 - by * c2) / d;
  const double uy = (bx * c2 - cx * b2) / d;
  return {{a.x + ux, a.y + uy}, std::hypot(ux, uy)};
}

Disk euclidean_ball(std::span<const Point> pts) {
  const double scale = point_scale(pts);
  Disk d{pts[0], 0.0};
  for (size_t i = 1; i < pts.size(); ++i) {
    if (inside(d, pts[i], scale)) continue;
    d = {pts[i], 0.0};
    for (size_t j = 0; j < i; ++j) {
      if (inside(d, pts[j], scale)) continue;
      d = circle_two(pts[i], pts[j]);
      for (size_t l = 0; l < j; ++l) {
        if (inside(d, pts[l], scale)) continue;
        d = circle_three(pts[i], pts[j], pts[l]);
      }
    }
  }
  return d;
}

Disk square_ball(std::span<const Point> pts, const Metric& m) {
  double ulo = std::numeric_limits<double>::infinity(), uhi = -ulo, vlo = ulo, vhi = -ulo;
  for (const auto& p : pts) {
    const Point q = to_square_frame(p, m);
    ulo = std::min(ulo, q.x);
    uhi = std::max(uhi, q.x);
    vlo = std::min(vlo, q.y);
    vhi = std::max(vhi, q.y);
  }
  const double r = std::max(uhi - ulo, vhi - vlo) / 2.0;
  return {from_square_frame({uhi - r, vhi - r}, m), r};
}

Rect bounding_box(std::span<const Point> pts) {
  Rect b{pts[0].x, pts[0].x, pts[0].y, pts[0].y};
  for (const auto& p : pts) {
    b.xlo = std::min(b.xlo, p.x);
    b.xhi = std::max(b.xhi, p.x);
    b.ylo = std::min(b.ylo, p.y);
    b.yhi = std::max(b.yhi, p.y);
  }
  return b;
}

Disk numeric_ball(std::span<const Point> pts, const Metric& m) {
  std::vector<detail::MinimaxTerm> terms;
  terms.reserve(pts.size());
  for (const auto& p : pts) terms.push_back({0, -1, p});
  const auto res = detail::minimize_max_distance(1, terms, m, bounding_box(pts));
  return {res.positions[0], res.value};
}

void validate_classes(const ColourClasses& classes) {
  if (classes.empty()) throw std::invalid_argument("colour classes must be nonempty");
  for (const auto& c : classes)
    if (c.empty()) throw std::invalid_argument("every colour class must be nonempty");
}

double classes_scale(const ColourClasses& classes) {
  double s = 1.0;
  for (const auto& c : classes) s = std::max(s, point_scale(c));
  return s;
}

bool within(Point a, Point b, const Metric& m, double lambda, double scale) {
  return distance(a, b, m) <= lambda * (1.0 + kRelEps) + kRelEps * scale;
}

bool covers_all(Point c, const ColourClasses& classes, const Metric& m, double lambda, double scale) {
  return std::all_of(classes.begin(), classes.end(), [&](const auto& cls) {
    return std::any_of(cls.begin(), cls.end(), [&](Point p) { return within(c, p, m, lambda, scale); });
  });
}

Feasibility euclidean_feasible(const ColourClasses& classes, double lambda) {
  const Metric m = Metric::l2();
  const double scale = classes_scale(classes);
  std::vector<Point> all;
  for (const auto& c : classes) all.insert(all.end(), c.begin(), c.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  // The intersection of a family of disks, when nonempty, has a leftmost
  // point: either the leftmost point of one disk or a crossing of two circles.
  std::vector<Point> cand;
  for (const auto& p : all) {
    cand.push_back(p);
    cand.push_back({p.x - lambda, p.y});
  }
  for (size_t i = 0; i < all.size(); ++i) {
    for (size_t j = i + 1; j < all.size(); ++j) {
      const Point a = all[i], b = all[j];
      const double d = std::hypot(b.x - a.x, b.y - a.y);
      if (d > 2.0 * lambda * (1.0 + kRelEps) + kRelEps * scale || d == 0.0) continue;
      const double h = std::sqrt(std::max(0.0, lambda * lambda - d * d / 4.0));
      const Point mid{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
      const double ox = -(b.y - a.y) / d * h, oy = (b.x - a.x) / d * h;
      cand.push_back({mid.x + ox, mid.y + oy});
      cand.push_back({mid.x - ox, mid.y - oy});
    }
  }
  std::sort(cand.begin(), cand.end());
  for (const auto& c : cand)
    if (covers_all(c, classes, m, lambda, scale)) return {true, c};
  return {false, std::nullopt};
}

Feasibility square_feasible(const ColourClasses& classes, const Metric& m, double lambda) {
  std::optional<RectUnion> region;
  for (const auto& cls : classes) {
    RectUnion u;
    for (const auto& p : cls) u.add(Rect::square(to_square_frame(p, m), lambda));
    region = region ? region->intersect(u) : u;
    if (region->empty()) return {false, std::nullopt};
  }
  return {true, region->lexicographic_min(m)};
}

// One point per class, pruned on the enclosing radius of the partial choice.
void choose_points(const ColourClasses& classes, const Metric& m, double lambda, size_t depth,
                   std::vector<Point>& chosen, std::optional<Disk>& found, double scale) {
  if (found) return;
  if (depth == classes.size()) {
    found = min_enclosing_ball(chosen, m);
    return;
  }
  for (const auto& p : classes[depth]) {
    chosen.push_back(p);
    const Disk d = min_enclosing_ball(chosen, m);
    if (d.radius <= lambda * (1.0 + kRelEps) + kRelEps * scale) choose_points(classes, m, lambda, depth + 1, chosen, found, scale);
    chosen.pop_back();
    if (found) return;
  }
}

Feasibility general_feasible(const ColourClasses& classes, const Metric& m, double lambda) {
  std::vector<Point> chosen;
  std::optional<Disk> found;
  choose_points(classes, m, lambda, 0, chosen, found, classes_scale(classes));
  if (!found) return {false, std::nullopt};
  return {true, found->center};
}

}  // namespace

Disk min_enclosing_ball(std::span<const Point> points, const Metric& m) {
  if (points.empty()) throw std::invalid_argument("min_enclosing_ball needs at least one point");
  if (m.is_l2()) return euclidean_ball(points);
  if (m.is_polygonal()) return square_ball(points, m);
  if (points.size() == 1) return {points[0], 0.0};
  return numeric_ball(points, m);
}

Feasibility disk_feasible(const ColourClasses& classes, const Metric& m, double lambda) {
  validate_classes(classes);
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");
  if (m.is_l2()) return euclidean_feasible(classes, lambda);
  if (m.is_polygonal()) return square_feasible(classes, m, lambda);
  return general_feasible(classes, m, lambda);
}

Disk smallest_colour_spanning_disk(const ColourClasses& classes, const Metric& m) {
  validate_classes(classes);
  double hi = 0.0;
  std::vector<Point> all;
  for (const auto& c : classes) all.insert(all.end(), c.begin(), c.end());
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j) hi = std::max(hi, distance(all[i], all[j], m));

  Feasibility at = disk_feasible(classes, m, 0.0);
  if (!at.feasible) {
    double lo = 0.0;
    at = disk_feasible(classes, m, hi);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
      const double mid = lo + (hi - lo) / 2.0;
      if (mid <= lo || mid >= hi) break;
      Feasibility f = disk_feasible(classes, m, mid);
      if (f.feasible) {
        hi = mid;
        at = std::move(f);
      } else {
        lo = mid;
      }
    }
  }
  // The nearest point of each class to the witness spans a ball no larger
  // than the bisection bound; its exact enclosing ball is the answer.
  const Point w = *at.witness;
  std::vector<Point> chosen;
  for (const auto& cls : classes) {
    Point best = cls[0];
    double bd = distance(w, best, m);
    for (const auto& p : cls) {
      const double d = distance(w, p, m);
      if (d < bd) {
        bd = d;
        best = p;
      }
    }
    chosen.push_back(best);
  }
  return min_enclosing_ball(chosen, m);
}

}  // namespace bsn
