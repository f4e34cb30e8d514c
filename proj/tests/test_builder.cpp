#include <algorithm>

#include "bsn/builder.hpp"
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

const Network kTwoTriangles = graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});

/// Postconditions every builder record must satisfy.
void check_record(const SequenceRecord& r, const UnderlyingNetwork& g_un, int max_degree) {
  CHECK(representative({g_un.base, r.q}, r.endpoints) == r.m_q);
  CHECK(is_2_connected(r.m_q));
  CHECK(steiner_topology_acyclic(r.m_q));
  CHECK(prune_to_critical(r.m_q) == r.m_q);
  CHECK(detect_linked_sets(r.m_q).empty());
  CHECK(static_cast<int>(r.q.size()) <= max_degree * g_un.steiner);
  for (int s = g_un.base.terminal_count(); s < r.m_q.vertex_count(); ++s) {
    CHECK(r.m_q.degree(s) >= 2);
    CHECK(r.m_q.degree(s) <= max_degree);
  }
}

}  // namespace

TEST_CASE("representative and endpoints_of are inverse") {
  const auto g_un = underlying_network(kTwoTriangles, 1.0, 1);
  const CandidateType t{g_un.base, {{6, {0, 1, 2}}, {6, {3, 4, 5}}}};
  const Network g = representative(t, {1, 5});
  CHECK(g.has_edge(6, 1));
  CHECK(g.has_edge(6, 5));
  CHECK(endpoints_of(t, g) == std::vector<int>{1, 5});
  CHECK_THROWS_AS(representative(t, {3, 5}), std::invalid_argument);
  Network other = g;
  other.add_edge(0, 4);
  CHECK_FALSE(endpoints_of(t, other));
}

TEST_CASE("valid pairs") {
  SUBCASE("two disjoint triangles and one unattached Steiner point") {
    const auto g_un = underlying_network(kTwoTriangles, 1.0, 1);
    auto pairs = valid_pairs(g_un.base, g_un, 5);
    std::sort(pairs.begin(), pairs.end());
    CHECK(pairs == std::vector<EndpointPair>{{6, {0, 1, 2}}, {6, {3, 4, 5}}});
  }
  SUBCASE("a 2-connected running graph admits nothing") {
    const auto g_un = underlying_network(graph(3, {{0, 1}, {1, 2}, {0, 2}}), 1.0, 0);
    CHECK(valid_pairs(g_un.base, g_un, 5).empty());
  }
  SUBCASE("saturated Steiner points are skipped") {
    const auto g_un = underlying_network(kTwoTriangles, 1.0, 1);
    Network f = g_un.base;
    f.add_edge(6, 0);
    f.add_edge(6, 3);
    CHECK(valid_pairs(f, g_un, 2).empty());
  }
}

TEST_CASE("order variants start with the input") {
  const auto g_un = underlying_network(kTwoTriangles, 1.0, 1);
  Network f = g_un.base;
  f.add_edge(6, 0);
  f.add_edge(6, 3);
  const auto vs = order_variants(f, g_un);
  REQUIRE_FALSE(vs.empty());
  CHECK(vs.front() == f);
  for (const auto& v : vs) CHECK(v.edges().size() == f.edges().size());
}

TEST_CASE("build_ses on small underlying networks") {
  SUBCASE("a triangle needs no Steiner point") {
    const auto g_un = underlying_network(graph(3, {{0, 1}, {1, 2}, {0, 2}}), 1.0, 1);
    CHECK(build_ses(g_un, {5, true}).empty());
  }
  SUBCASE("two triangles and one Steiner point") {
    // The lone Steiner point would be a cut vertex, so nothing qualifies.
    const auto g_un = underlying_network(kTwoTriangles, 1.0, 1);
    const auto recs = build_ses(g_un, {5, true});
    CHECK(recs.empty());
    for (const auto& r : build_ses(g_un, {5, false})) CHECK(is_2_connected(r.m_q));
  }
  SUBCASE("two triangles and two Steiner points") {
    const auto g_un = underlying_network(kTwoTriangles, 1.0, 2);
    const auto recs = build_ses(g_un, {5, true});
    REQUIRE_FALSE(recs.empty());
    for (const auto& r : recs) {
      check_record(r, g_un, 5);
      CHECK(r.q.size() == 4);
    }
  }
  SUBCASE("a path of two edges with one Steiner point") {
    const auto g_un = underlying_network(graph(3, {{0, 1}, {1, 2}}), 1.0, 1);
    const auto recs = build_ses(g_un, {5, true});
    REQUIRE_FALSE(recs.empty());
    for (const auto& r : recs) check_record(r, g_un, 5);
  }
}

TEST_CASE("build_ses records on random threshold networks") {
  Gen g(31);
  int total = 0;
  for (int t = 0; t < 40; ++t) {
    const auto pts = g.points(g.uniform_int(3, 6));
    const Metric m = g.metric();
    const int k = g.uniform_int(1, 2);
    const Instance inst{pts, k, m};
    for (double level : solver_levels(inst)) {
      const auto g_un = threshold_network(pts, m, level, k);
      if (g_un.b_value() > m.max_steiner_degree() * k) continue;
      for (const auto& r : build_ses(g_un, {m.max_steiner_degree(), true})) {
        check_record(r, g_un, m.max_steiner_degree());
        ++total;
      }
    }
  }
  CHECK(total > 0);
}
