#include "convex_minimax.hpp"

#include <algorithm>
#include <cmath>

namespace bsn::detail {
namespace {

double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

// A subgradient of the norm at (dx, dy).
Point norm_gradient(double dx, double dy, const Metric& m) {
  if (dx == 0.0 && dy == 0.0) return {0.0, 0.0};
  if (m.is_l1()) return {sgn(dx), sgn(dy)};
  if (m.is_linf()) {
    if (std::abs(dx) >= std::abs(dy)) return {sgn(dx), 0.0};
    return {0.0, sgn(dy)};
  }
  if (m.is_l2()) {
    const double r = std::hypot(dx, dy);
    return {dx / r, dy / r};
  }
  const double p = m.p();
  const double r = norm(dx, dy, m);
  const double gx = sgn(dx) * std::pow(std::abs(dx) / r, p - 1.0);
  const double gy = sgn(dy) * std::pow(std::abs(dy) / r, p - 1.0);
  return {gx, gy};
}

}  // namespace

MinimaxResult minimize_max_distance(int nodes, std::span<const MinimaxTerm> terms, const Metric& m,
                                    const Rect& box, double rel_tol) {
  MinimaxResult out;
  const Point mid{(box.xlo + box.xhi) / 2.0, (box.ylo + box.yhi) / 2.0};
  out.positions.assign(static_cast<size_t>(nodes), mid);
  if (nodes == 0 || terms.empty()) return out;

  const int n = 2 * nodes;
  const double half_diag = 0.5 * std::hypot(box.xhi - box.xlo, box.yhi - box.ylo);
  const double scale = std::max(1.0, 2.0 * half_diag);
  const double radius = std::sqrt(static_cast<double>(nodes)) * half_diag * 1.05 + 1e-9 * scale;

  std::vector<double> x(static_cast<size_t>(n));
  for (int i = 0; i < nodes; ++i) {
    x[2 * i] = mid.x;
    x[2 * i + 1] = mid.y;
  }
  std::vector<double> P(static_cast<size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) P[i * n + i] = radius * radius;

  std::vector<double> g(static_cast<size_t>(n)), Pg(static_cast<size_t>(n));
  double best = std::numeric_limits<double>::infinity();
  double lb = 0.0;
  std::vector<double> best_x = x;

  const double dn = static_cast<double>(n);
  const double shrink = dn * dn / (dn * dn - 1.0);
  const int max_iter = 400 * n * n + 2000;

  for (int iter = 0; iter < max_iter; ++iter) {
    // Objective and one subgradient from an active term.
    double f = -1.0;
    const MinimaxTerm* active = nullptr;
    double adx = 0.0, ady = 0.0;
    for (const auto& t : terms) {
      const double ax = x[2 * t.a], ay = x[2 * t.a + 1];
      const double bx = t.b < 0 ? t.anchor.x : x[2 * t.b];
      const double by = t.b < 0 ? t.anchor.y : x[2 * t.b + 1];
      const double dx = ax - bx, dy = ay - by;
      const double v = norm(dx, dy, m);
      if (v > f) {
        f = v;
        active = &t;
        adx = dx;
        ady = dy;
      }
    }
    if (f < best) {
      best = f;
      best_x = x;
    }
    std::fill(g.begin(), g.end(), 0.0);
    const Point grad = norm_gradient(adx, ady, m);
    g[2 * active->a] += grad.x;
    g[2 * active->a + 1] += grad.y;
    if (active->b >= 0) {
      g[2 * active->b] -= grad.x;
      g[2 * active->b + 1] -= grad.y;
    }
    double gPg = 0.0;
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += P[i * n + j] * g[j];
      Pg[i] = s;
      gPg += g[i] * s;
    }
    if (!(gPg > 0.0)) {
      // Zero subgradient: the current centre is optimal.
      lb = best;
      break;
    }
    const double root = std::sqrt(gPg);
    lb = std::max(lb, f - root);
    if (best - lb <= rel_tol * scale) break;

    for (int i = 0; i < n; ++i) x[i] -= Pg[i] / (root * (dn + 1.0));
    const double c = 2.0 / ((dn + 1.0) * gPg);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const double v = shrink * (P[i * n + j] - c * Pg[i] * Pg[j]);
        P[i * n + j] = v;
        P[j * n + i] = v;
      }
    }
  }

  for (int i = 0; i < nodes; ++i) out.positions[i] = {best_x[2 * i], best_x[2 * i + 1]};
  out.value = best;
  out.lower_bound = std::min(lb, best);
  return out;
}

}  // namespace bsn::detail
