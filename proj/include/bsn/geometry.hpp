#pragma once

#include <compare>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace bsn {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

/// An L_p plane. `p` is +infinity for the Chebyshev metric.
class Metric {
 public:
  Metric() = default;

  static Metric lp(double p);
  static Metric l1() { return lp(1.0); }
  static Metric l2() { return lp(2.0); }
  static Metric linf() { return lp(std::numeric_limits<double>::infinity()); }

  double p() const { return p_; }
  bool is_l1() const { return p_ == 1.0; }
  bool is_l2() const { return p_ == 2.0; }
  bool is_linf() const { return p_ == std::numeric_limits<double>::infinity(); }
  /// L1 and L-infinity balls are axis-aligned squares after a 45 degree
  /// rotation (L1) or directly (L-infinity).
  bool is_polygonal() const { return is_l1() || is_linf(); }

  /// Maximum Steiner degree needed by some optimal network: 7 for p in
  /// {1, inf}, 5 otherwise.
  int max_steiner_degree() const { return is_polygonal() ? 7 : 5; }

  friend bool operator==(const Metric&, const Metric&) = default;

 private:
  explicit Metric(double p) : p_(p) {}
  double p_ = 2.0;
};

double norm(double dx, double dy, const Metric& m);
double distance(Point a, Point b, const Metric& m);

struct Disk {
  Point center;
  double radius = 0.0;
};

using ColourClasses = std::vector<std::vector<Point>>;

/// Smallest L_p ball enclosing all points. Exact for p in {1, 2, inf};
/// numerically minimised otherwise. Non-unique centres (L1, L-inf) resolve to
/// the lexicographically smallest one.
Disk min_enclosing_ball(std::span<const Point> points, const Metric& m);

struct Feasibility {
  bool feasible = false;
  std::optional<Point> witness;
};

/// Is there a centre within `lambda` of at least one point of every class?
Feasibility disk_feasible(const ColourClasses& classes, const Metric& m, double lambda);

/// Minimum-radius L_p ball containing one point of every class.
Disk smallest_colour_spanning_disk(const ColourClasses& classes, const Metric& m);

// ---------------------------------------------------------------------------
// Axis-aligned regions for the polygonal metrics. For L-infinity the frame is
// the plane itself; for L1 it is (u, v) = (x + y, x - y), in which the L1
// distance becomes the L-infinity distance.

Point to_square_frame(Point p, const Metric& m);
Point from_square_frame(Point q, const Metric& m);

struct Rect {
  double xlo = 0.0;
  double xhi = 0.0;
  double ylo = 0.0;
  double yhi = 0.0;

  bool empty() const { return xlo > xhi || ylo > yhi; }
  bool contains(const Rect& o) const {
    return xlo <= o.xlo && o.xhi <= xhi && ylo <= o.ylo && o.yhi <= yhi;
  }
  static Rect square(Point c, double half) { return {c.x - half, c.x + half, c.y - half, c.y + half}; }
};

/// Finite union of closed rectangles, kept free of contained duplicates.
class RectUnion {
 public:
  RectUnion() = default;
  explicit RectUnion(Rect r) { add(r); }

  void add(const Rect& r);
  bool empty() const { return rects_.empty(); }
  const std::vector<Rect>& rects() const { return rects_; }

  RectUnion intersect(const RectUnion& other) const;
  /// Minkowski sum with the square of half-width `delta`.
  RectUnion inflate(double delta) const;

  /// Lexicographically smallest point, measured in the original (x, y) frame.
  std::optional<Point> lexicographic_min(const Metric& m) const;

 private:
  std::vector<Rect> rects_;
};

}  // namespace bsn
