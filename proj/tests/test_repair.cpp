#include "bsn/repair.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace bsn;
using bsn::testing::Gen;

namespace {

Network placed(const std::vector<Point>& pts, int steiner, std::initializer_list<std::pair<int, int>> edges) {
  Network g(static_cast<int>(pts.size()), steiner);
  for (size_t i = 0; i < pts.size(); ++i) g.set_position(static_cast<int>(i), pts[i]);
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

/// Triangle A = {0,1,2} and a lone terminal 3; Steiner points 4 and 5 each
/// join A and {3}. The two edges into A form the only non-forced cut.
CandidateType shared_class_type() {
  return {placed({{0, 0}, {1, 0}, {0.5, 0.8}, {5, 0.4}}, 2, {{0, 1}, {1, 2}, {0, 2}}),
          {{4, {0, 1, 2}}, {4, {3}}, {5, {0, 1, 2}}, {5, {3}}}};
}

}  // namespace

TEST_CASE("distinct singleton classes give no cuts") {
  const CandidateType t{placed({{0, 0}, {4, 0}, {2, 3}}, 1, {}), {{3, {0}}, {3, {1}}, {3, {2}}}};
  CHECK(potential_cuts(t, 3).empty());
}

TEST_CASE("two edges into one shared class form a cut") {
  const auto cuts = potential_cuts(shared_class_type(), 4);
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0].edges == std::vector<int>{0, 2});
  CHECK(cuts[0].common == std::vector<int>{0, 1, 2});
  CHECK(is_type_edge_cut(shared_class_type(), {0, 2}));
  CHECK_FALSE(is_type_edge_cut(shared_class_type(), {0}));
}

TEST_CASE("edges into a class that other attachments bypass") {
  // Path 0-1-2-3; three Steiner points each join {0} and {3}.
  const CandidateType t{placed({{0, 0}, {1, 0}, {2, 0}, {3, 0}}, 3, {{0, 1}, {1, 2}, {2, 3}}),
                        {{4, {0}}, {4, {3}}, {5, {0}}, {5, {3}}, {6, {0}}, {6, {3}}}};
  CHECK_FALSE(is_type_edge_cut(t, {0, 2, 4}));
  CHECK(potential_cuts(t, 6).empty());
}

TEST_CASE("two_connect repairs a shared-class cut") {
  const CandidateType t = shared_class_type();
  const Metric m = Metric::l2();
  const auto plain = optimize_placement(t, m);
  CHECK_FALSE(is_2_connected(plain.network));  // both points take vertex 1
  const auto fixed = two_connect(t, m, potential_cuts(t, 4));
  REQUIRE(fixed);
  CHECK(is_2_connected(fixed->network));
  CHECK(fixed->bottleneck >= plain.bottleneck - 1e-12);
  CHECK(fixed->network.bottleneck(m) == doctest::Approx(fixed->bottleneck));
}

TEST_CASE("without cuts two_connect equals the plain placement") {
  // Path 0-1-2 closed into a cycle by one Steiner point.
  const CandidateType t{placed({{0, 0}, {4, 0}, {2, 3}}, 1, {{0, 1}, {1, 2}}), {{3, {0}}, {3, {2}}}};
  REQUIRE(potential_cuts(t, 2).empty());
  const auto a = two_connect(t, Metric::l2(), {});
  REQUIRE(a);
  CHECK(a->bottleneck == doctest::Approx(optimize_placement(t, Metric::l2()).bottleneck));
}

TEST_CASE("two_connect_or falls back to the given representative") {
  // One Steiner point attached twice to a single terminal class {0}: never
  // 2-connected, so the fallback placement is returned.
  const CandidateType t{placed({{0, 0}, {2, 0}}, 1, {{0, 1}}), {{2, {0}}, {2, {1}}}};
  const auto r = two_connect_or(t, Metric::l2(), potential_cuts(t, 2), {0, 1});
  CHECK(r.endpoints == std::vector<int>{0, 1});
  CHECK(r.bottleneck == doctest::Approx(2.0));
}

TEST_CASE("repairs never beat the unconstrained placement") {
  Gen g(59);
  for (int t = 0; t < 60; ++t) {
    const Metric m = g.metric();
    const auto pts = g.points(4);
    CandidateType ct{placed(pts, 2, {{0, 1}, {1, 2}, {0, 2}}), {{4, {0, 1, 2}}, {4, {3}}, {5, {0, 1, 2}}, {5, {3}}}};
    const auto plain = optimize_placement(ct, m);
    const auto fixed = two_connect(ct, m, potential_cuts(ct, 4));
    REQUIRE(fixed);
    CHECK(is_2_connected(fixed->network));
    CHECK(fixed->bottleneck >= plain.bottleneck - 1e-9);
  }
}
