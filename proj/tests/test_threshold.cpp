#include <algorithm>
#include <cmath>

#include "bsn/threshold.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace bsn;
using bsn::testing::Gen;

namespace {

const std::vector<Point> kCollinear{{0, 0}, {1, 0}, {3, 0}};
const std::vector<Point> kTriangle{{0, 0}, {1, 0}, {0.5, 0.8660254037844386}};

Network graph(int n, std::initializer_list<std::pair<int, int>> edges) {
  Network g(n, 0);
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

std::vector<std::vector<int>> members_of_kind(const std::vector<ValidSubset>& subsets, SubsetKind kind) {
  std::vector<std::vector<int>> out;
  for (const auto& s : subsets)
    if (s.kind == kind) out.push_back(s.members);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("distance levels") {
  CHECK(distance_levels(kCollinear, Metric::l2()) == std::vector<double>{1, 2, 3});
  const auto tri = distance_levels(kTriangle, Metric::l2());
  REQUIRE(tri.size() == 1);
  CHECK(tri[0] == doctest::Approx(1.0));
  CHECK(distance_levels({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, Metric::l1()) == std::vector<double>{1, 2});
}

TEST_CASE("threshold graphs of three collinear points") {
  const Metric m = Metric::l2();
  CHECK(threshold_graph(kCollinear, m, 1.0).edges() == graph(3, {{0, 1}}).edges());
  CHECK(threshold_graph(kCollinear, m, 2.0).edges() == graph(3, {{0, 1}, {1, 2}}).edges());
  CHECK(threshold_graph(kCollinear, m, 3.0).edges() == graph(3, {{0, 1}, {1, 2}, {0, 2}}).edges());
  CHECK(threshold_graph(kCollinear, m, 0.0).edges().empty());
}

TEST_CASE("threshold graphs are monotone in the level") {
  Gen g(5);
  for (int t = 0; t < 100; ++t) {
    const auto pts = g.points(g.uniform_int(2, 8));
    const Metric m = g.metric();
    const double a = g.uniform(0, 8), b = a + g.uniform(0, 4);
    const Network ga = threshold_graph(pts, m, a), gb = threshold_graph(pts, m, b);
    for (const auto& e : ga.edges()) CHECK(gb.has_edge(e.u, e.v));
  }
}

TEST_CASE("V_CV examples") {
  CHECK(compute_V_CV(block_cut_forest(graph(3, {{0, 1}, {1, 2}}))) == std::vector<int>{1});
  CHECK(compute_V_CV(block_cut_forest(graph(3, {{0, 1}, {1, 2}, {0, 2}}))).empty());
  const Network bowtie = graph(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  CHECK(compute_V_CV(block_cut_forest(bowtie)) == std::vector<int>{2});
}

TEST_CASE("valid subset partitions") {
  SUBCASE("path") {
    const Network p = graph(3, {{0, 1}, {1, 2}});
    const auto vs = valid_subset_partition(p, block_cut_forest(p));
    CHECK(members_of_kind(vs, SubsetKind::leaf_interior) == std::vector<std::vector<int>>{{0}, {2}});
    CHECK(members_of_kind(vs, SubsetKind::cut_singleton) == std::vector<std::vector<int>>{{1}});
    CHECK(vs.size() == 3);
  }
  SUBCASE("triangle") {
    const Network t = graph(3, {{0, 1}, {1, 2}, {0, 2}});
    const auto vs = valid_subset_partition(t, block_cut_forest(t));
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].kind == SubsetKind::isolated_block);
    CHECK(vs[0].members == std::vector<int>{0, 1, 2});
  }
  SUBCASE("two disjoint triangles") {
    const Network t = graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    const auto vs = valid_subset_partition(t, block_cut_forest(t));
    CHECK(members_of_kind(vs, SubsetKind::isolated_block) == std::vector<std::vector<int>>{{0, 1, 2}, {3, 4, 5}});
  }
  SUBCASE("degree-two block path between two leaves") {
    // Leaf triangle {0,1,2}, path blocks {2,3,4}, {4,5,6}, leaf triangle {6,7,8}.
    const Network g = graph(9, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}, {4, 5}, {5, 6}, {4, 6},
                                {6, 7}, {7, 8}, {6, 8}});
    const auto vs = valid_subset_partition(g, block_cut_forest(g));
    const auto paths = members_of_kind(vs, SubsetKind::path_interior);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0] == std::vector<int>{3, 4, 5});
  }
}

TEST_CASE("valid subsets partition the terminals") {
  Gen g(9);
  for (int t = 0; t < 300; ++t) {
    const int n = g.uniform_int(1, 10);
    const Network h = g.random_graph(n, g.uniform(0.05, 0.7));
    const auto vs = valid_subset_partition(h, block_cut_forest(h));
    std::vector<int> seen;
    for (const auto& s : vs) {
      CHECK_FALSE(s.members.empty());
      seen.insert(seen.end(), s.members.begin(), s.members.end());
    }
    std::sort(seen.begin(), seen.end());
    std::vector<int> all(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i;
    CHECK(seen == all);
  }
}

TEST_CASE("underlying network bookkeeping") {
  const auto u = threshold_network(kCollinear, Metric::l2(), 2.0, 2);
  CHECK(u.base.terminal_count() == 3);
  CHECK(u.base.steiner_count() == 2);
  CHECK(u.b_value() == 2);
  CHECK(u.component_count == 1);
  for (int v = 0; v < 3; ++v) {
    const int s = u.subset_of[static_cast<size_t>(v)];
    REQUIRE(s >= 0);
    const auto& mem = u.valid_subsets[static_cast<size_t>(s)].members;
    CHECK(std::find(mem.begin(), mem.end(), v) != mem.end());
  }
  CHECK(threshold_network(kCollinear, Metric::l2(), 0.0, 0).b_value() == 6);
  CHECK_THROWS_AS(threshold_network(kCollinear, Metric::l2(), 1.0, -1), std::invalid_argument);
}
