#include <algorithm>
#include <cmath>

#include "bsn/placement.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace bsn;
using bsn::testing::Gen;

namespace {

Network placed(const std::vector<Point>& pts, int steiner) {
  Network g(static_cast<int>(pts.size()), steiner);
  for (size_t i = 0; i < pts.size(); ++i) g.set_position(static_cast<int>(i), pts[i]);
  return g;
}

/// Two terminals and one Steiner point joined to both.
CandidateType midpoint_type() { return {placed({{0, 0}, {4, 0}}, 1), {{2, {0}}, {2, {1}}}}; }

/// (0,0) - s1 - s2 - (3,0).
CandidateType chain_type() { return {placed({{0, 0}, {3, 0}}, 2), {{2, {0}}, {3, {1}}, {2, {3}}}}; }

}  // namespace

TEST_CASE("single Steiner point at the midpoint") {
  const auto r = optimize_placement(midpoint_type(), Metric::l2());
  CHECK(r.bottleneck == doctest::Approx(2.0));
  REQUIRE(r.steiner_positions.size() == 1);
  CHECK(r.steiner_positions[0].x == doctest::Approx(2.0));
  CHECK(r.steiner_positions[0].y == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(r.network.has_edge(2, 0));
  CHECK(r.network.has_edge(2, 1));
}

TEST_CASE("two-point chain splits the segment in thirds") {
  const auto r = optimize_placement(chain_type(), Metric::l2());
  CHECK(r.bottleneck == doctest::Approx(1.0));
  REQUIRE(r.steiner_positions.size() == 2);
  CHECK(r.steiner_positions[0].x == doctest::Approx(1.0));
  CHECK(r.steiner_positions[1].x == doctest::Approx(2.0));
}

TEST_CASE("equilateral triangle centre") {
  const CandidateType t{placed({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}}, 1), {{3, {0}}, {3, {1}}, {3, {2}}}};
  CHECK(std::abs(optimize_placement(t, Metric::l2()).bottleneck - 1.0 / std::sqrt(3.0)) <= 1e-9);
}

TEST_CASE("terminal edges count toward the bottleneck") {
  CandidateType t = midpoint_type();
  t.base.add_edge(0, 1);
  CHECK(optimize_placement(t, Metric::l2()).bottleneck == doctest::Approx(4.0));
}

TEST_CASE("placement feasibility") {
  CHECK(placement_feasible(midpoint_type(), Metric::l2(), 2.0));
  CHECK_FALSE(placement_feasible(midpoint_type(), Metric::l2(), 1.9));
  CHECK(placement_feasible(chain_type(), Metric::l2(), 1.01));
  CHECK_FALSE(placement_feasible(chain_type(), Metric::l2(), 0.99));
}

TEST_CASE("endpoint choice inside a class") {
  // The Steiner point picks the nearer member of each class.
  const CandidateType t{placed({{0, 0}, {10, 0}, {2, 0}, {10, 10}}, 1), {{4, {0, 1}}, {4, {2, 3}}}};
  const auto r = optimize_placement(t, Metric::l2());
  CHECK(r.bottleneck == doctest::Approx(1.0));
  CHECK(r.endpoints == std::vector<int>{0, 2});
}

TEST_CASE("Steiner components") {
  int count = 0;
  const CandidateType t{placed({{0, 0}, {1, 0}}, 3), {{2, {0}}, {3, {1}}, {2, {3}}, {4, {0}}}};
  const auto comp = steiner_components(t, &count);
  CHECK(count == 2);
  CHECK(comp == std::vector<int>{0, 0, 1});
}

TEST_CASE("cyclic Steiner topologies are rejected") {
  const CandidateType t{placed({{0, 0}}, 3), {{1, {2}}, {2, {3}}, {3, {1}}, {1, {0}}}};
  CHECK_THROWS_AS(optimize_placement(t, Metric::l2()), std::invalid_argument);
}

TEST_CASE("optimal bottleneck is the feasibility threshold") {
  Gen g(41);
  for (int t = 0; t < 120; ++t) {
    const Metric m = g.metric();
    const int n = g.uniform_int(2, 4);
    const auto pts = g.points(n);
    // Random Steiner tree on up to three points, each with one terminal class.
    const int k = g.uniform_int(1, 3);
    CandidateType ct{placed(pts, k), {}};
    for (int s = 1; s < k; ++s) ct.pairs.push_back({n + s, {n + g.uniform_int(0, s - 1)}});
    for (int s = 0; s < k; ++s) {
      std::vector<int> cls;
      for (int v = 0; v < n; ++v)
        if (g.coin(0.5)) cls.push_back(v);
      if (cls.empty()) cls.push_back(g.uniform_int(0, n - 1));
      ct.pairs.push_back({n + s, cls});
    }
    const auto r = optimize_placement(ct, m);
    // The returned network realises the reported bottleneck.
    CHECK(r.network.bottleneck(m) == doctest::Approx(r.bottleneck).epsilon(1e-9));
    CHECK(placement_feasible(ct, m, r.bottleneck * (1 + 1e-7) + 1e-9));
    if (r.bottleneck > 1e-6) CHECK_FALSE(placement_feasible(ct, m, r.bottleneck * (1 - 1e-4)));
  }
}

TEST_CASE("enlarging a class never increases the optimum") {
  Gen g(43);
  for (int t = 0; t < 100; ++t) {
    const Metric m = g.metric();
    const int n = g.uniform_int(3, 5);
    const auto pts = g.points(n);
    CandidateType ct{placed(pts, 2), {{n + 1, {n}}}};
    for (int s = 0; s < 2; ++s) ct.pairs.push_back({n + s, {g.uniform_int(0, n - 1)}});
    const double before = optimize_placement(ct, m).bottleneck;
    CandidateType bigger = ct;
    auto& y = bigger.pairs[static_cast<size_t>(g.uniform_int(1, static_cast<int>(bigger.pairs.size()) - 1))].y;
    y.push_back(g.uniform_int(0, n - 1));
    std::sort(y.begin(), y.end());
    y.erase(std::unique(y.begin(), y.end()), y.end());
    CHECK(optimize_placement(bigger, m).bottleneck <= before + 1e-9);
  }
}
