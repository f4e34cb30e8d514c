#include <algorithm>

#include "bsn/driver.hpp"
#include "bsn/linked.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace bsn;
using bsn::testing::Gen;

namespace {

Network graph(int n, std::initializer_list<std::pair<int, int>> edges, int steiner = 0) {
  Network g(n, steiner);
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

/// Leaf triangle {0,1,2}, degree-two blocks {2,3,4}, {4,5,6}, {6,7,8}, leaf
/// triangle {8,9,10}. The path interior is {3,...,7}.
Network chain_of_triangles() {
  return graph(11, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}, {4, 5}, {5, 6}, {4, 6},
                    {6, 7}, {7, 8}, {6, 8}, {8, 9}, {9, 10}, {8, 10}});
}

std::vector<int> class_of(const UnderlyingNetwork& u, int v) {
  return u.valid_subsets[static_cast<size_t>(u.subset_of[static_cast<size_t>(v)])].members;
}

}  // namespace

TEST_CASE("linked set detection") {
  SUBCASE("crossing attachments on a block path") {
    // Path 0-1-2-3; Steiner 4 closes the first block, 5 the last; 4-3 and 5-0
    // are the linked pair.
    const Network n = graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {1, 4}, {2, 5}, {3, 5}, {3, 4}, {0, 5}}, 2);
    const auto sets = detect_linked_sets(n);
    const bool found = std::any_of(sets.begin(), sets.end(), [](const LinkedSet& l) {
      const std::vector<Edge> got{std::min(l.first, l.second), std::max(l.first, l.second)};
      return got == std::vector<Edge>{Edge(0, 5), Edge(3, 4)};
    });
    CHECK(found);
  }
  SUBCASE("only internal Steiner edges") {
    const Network n = graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}}, 2);
    CHECK(detect_linked_sets(n).empty());
  }
}

TEST_CASE("ordered block paths") {
  const Network p = graph(4, {{0, 1}, {1, 2}, {2, 3}});
  const auto path = ordered_block_path(p, 0, 3);
  REQUIRE(path);
  CHECK(*path == std::vector<std::vector<int>>{{0, 1}, {1, 2}, {2, 3}});
  const auto back = ordered_block_path(p, 3, 0);
  REQUIRE(back);
  CHECK(back->front() == std::vector<int>{2, 3});
  CHECK_FALSE(ordered_block_path(p, 1, 3));  // 1 is a cut vertex
  const Network star = graph(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK_FALSE(ordered_block_path(star, 1, 2));
  const Network tri = graph(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto one = ordered_block_path(tri, 0, 2);
  REQUIRE(one);
  CHECK(one->size() == 1);
}

TEST_CASE("terminal windows") {
  const Network base(4, 0);
  const SplitEdge e{0, {{0, 1}, {1, 2}, {2, 3}}};
  CHECK(window_left(e, 2, base) == std::vector<int>{0, 1});
  CHECK(window_right(e, 2, base) == std::vector<int>{2, 3});
  CHECK_THROWS(window_left(e, 1, base));
  CHECK_THROWS(window_right(e, 3, base));
  CHECK(splittable(e, base));
  const SplitEdge short_path{0, {{0, 1}, {1, 2}}};
  CHECK_FALSE(splittable(short_path, base));
}

TEST_CASE("mark_ses replaces the internal pair by two external ones") {
  const auto g_un = underlying_network(chain_of_triangles(), 1.0, 2);
  const SteinerEndpointSequence q{{11, class_of(g_un, 0)}, {12, class_of(g_un, 9)}, {11, {12}}};
  const SplitEdge e{2, {{0, 1, 2, 11}, {2, 3, 4}, {4, 5, 6}, {6, 7, 8}, {8, 9, 10, 12}}};
  std::vector<std::pair<int, int>> links;
  const auto out = mark_ses(q, {e}, {2}, {{0, 0}}, g_un, &links);
  REQUIRE(out);
  REQUIRE(out->size() == 4);
  CHECK((*out)[2] == EndpointPair{11, window_right(e, 2, g_un.base)});
  CHECK((*out)[3] == EndpointPair{12, window_left(e, 2, g_un.base)});
  CHECK(links == std::vector<std::pair<int, int>>{{2, 3}});
  // A component that the window misses yields nothing.
  CHECK_FALSE(mark_ses(q, {e}, {2}, {{1, 0}}, g_un));
}

TEST_CASE("canonical representative moves a path-interior endpoint to the far block") {
  const auto g_un = underlying_network(chain_of_triangles(), 1.0, 2);
  const std::vector<int> path_class = class_of(g_un, 3);
  REQUIRE(path_class == std::vector<int>{3, 4, 5, 6, 7});
  const CandidateType t{g_un.base, {{11, class_of(g_un, 0)}, {12, class_of(g_un, 9)}, {11, {12}}, {11, path_class}}};
  const std::vector<int> ends{0, 9, 12, 3};
  REQUIRE(is_2_connected(representative(t, ends)));
  const auto canon = canonical_representative(t, ends, 2, g_un);
  CHECK(canon[0] == 0);
  CHECK(canon[1] == 9);
  CHECK(canon[2] == 12);
  CHECK(canon[3] == 7);
  CHECK(is_2_connected(representative(t, canon)));
}

TEST_CASE("canonical representative leaves other attachments alone") {
  const auto g_un = underlying_network(chain_of_triangles(), 1.0, 2);
  const CandidateType t{g_un.base, {{11, class_of(g_un, 0)}, {12, class_of(g_un, 9)}, {11, {12}}}};
  const std::vector<int> ends{1, 10, 12};
  CHECK(canonical_representative(t, ends, 2, g_un) == ends);
}

TEST_CASE("bin_link on builder records") {
  Gen g(67);
  int with_splits = 0, without = 0;
  for (int t = 0; t < 80 && (with_splits < 5 || without < 5); ++t) {
    const Metric m = g.metric();
    const auto pts = g.points(g.uniform_int(4, 6));
    const int k = 2;
    for (double level : solver_levels({pts, k, m})) {
      const auto g_un = threshold_network(pts, m, level, k);
      if (g_un.b_value() > m.max_steiner_degree() * k) continue;
      for (const auto& rec : build_ses(g_un, {m.max_steiner_degree(), true})) {
        const auto splits = split_edges(rec, g_un);
        const auto linked = bin_link(rec, g_un, m);
        CHECK(is_2_connected(linked.network));
        CHECK(linked.network.bottleneck(m) == doctest::Approx(linked.bottleneck));
        if (splits.empty()) {
          ++without;
          bool internal = false;
          for (const auto& p : rec.q) internal |= p.y.size() == 1 && g_un.base.is_steiner(p.y[0]);
          if (!internal) {
            const CandidateType ct{g_un.base, rec.q};
            const int budget = std::max(1, m.max_steiner_degree() * k);
            const auto plain = two_connect_or(ct, m, potential_cuts(ct, budget), rec.endpoints);
            CHECK(linked.bottleneck == doctest::Approx(plain.bottleneck));
          }
        } else {
          ++with_splits;
          for (const auto& e : splits) CHECK(e.p() >= 3);
          CHECK(linked.bottleneck == doctest::Approx(bin_link_exhaustive(rec, g_un, m).bottleneck));
        }
      }
    }
  }
  CHECK(without > 0);
}
