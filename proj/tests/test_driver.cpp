#include <cmath>

#include "bsn/driver.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace bsn;
using bsn::testing::Gen;

namespace {

const std::vector<Point> kTriangle{{0, 0}, {1, 0}, {0.5, 0.8660254037844386}};

/// Structural postconditions of any solution.
void check_solution(const Instance& inst, const Solution& s) {
  const Network& n = s.network;
  CHECK(is_2_connected(n));
  CHECK(n.terminal_count() == static_cast<int>(inst.terminals.size()));
  CHECK(s.steiner_count == n.steiner_count());
  CHECK(s.steiner_count <= inst.k);
  for (int v = n.terminal_count(); v < n.vertex_count(); ++v) CHECK(n.degree(v) <= inst.metric.max_steiner_degree());
  for (int v = 0; v < n.terminal_count(); ++v) CHECK(*n.position(v) == inst.terminals[static_cast<size_t>(v)]);
  CHECK(n.bottleneck(inst.metric) == doctest::Approx(s.bottleneck).epsilon(1e-12));
}

}  // namespace

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(Instance({{{0, 0}}, 0, Metric::l2()}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(Instance({{{0, 0}, {0, 0}}, 0, Metric::l2()}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(Instance({{{0, 0}, {1, 0}}, -1, Metric::l2()}).validate(), std::invalid_argument);
  CHECK_NOTHROW(Instance({{{0, 0}, {1, 0}}, 0, Metric::l2()}).validate());
}

TEST_CASE("solver levels start at zero") {
  const Instance inst{{{0, 0}, {1, 0}, {3, 0}}, 1, Metric::l2()};
  CHECK(solver_levels(inst) == std::vector<double>{0, 1, 2, 3});
}

TEST_CASE("two terminals") {
  const Instance inst{{{0, 0}, {3, 4}}, 0, Metric::l2()};
  const Solution s = solve(inst);
  CHECK(s.bottleneck == doctest::Approx(5.0));
  check_solution(inst, s);
  CHECK(solve_k0(inst).bottleneck == doctest::Approx(5.0));
}

TEST_CASE("equilateral triangle") {
  const Instance k0{kTriangle, 0, Metric::l2()};
  CHECK(solve(k0).bottleneck == doctest::Approx(1.0));
  const Instance k2{kTriangle, 2, Metric::l2()};
  const Solution s = solve(k2);
  CHECK(std::abs(s.bottleneck - 1 / std::sqrt(3.0)) <= 1e-6);
  check_solution(k2, s);
  CHECK(s.steiner_count == 2);
}

TEST_CASE("closed form without Steiner points") {
  CHECK(solve_k0({{{0, 0}, {1, 0}, {3, 0}}, 0, Metric::l2()}).bottleneck == doctest::Approx(3.0));
  CHECK(solve_k0({{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 0, Metric::l2()}).bottleneck == doctest::Approx(1.0));
}

TEST_CASE("evaluate_level gates on leaf blocks") {
  const Instance inst{{{0, 0}, {10, 0}, {20, 0}, {30, 0}, {40, 0}, {50, 0}, {60, 0}}, 1, Metric::l2()};
  // At level 0 all seven terminals are isolated: b = 14 > 5.
  CHECK(evaluate_level(inst, 0.0).gated);
}

TEST_CASE("random instances: postconditions, k monotonicity and k = 0 agreement") {
  Gen g(83);
  for (int t = 0; t < 25; ++t) {
    Instance inst = g.instance(3, 6, 0, 0);
    const double k0 = solve(inst).bottleneck;
    CHECK(k0 == solve_k0(inst).bottleneck);
    double prev = k0;
    for (int k = 1; k <= 2; ++k) {
      inst.k = k;
      const Solution s = solve(inst);
      check_solution(inst, s);
      CHECK(s.bottleneck <= prev + 1e-9);
      prev = s.bottleneck;
    }
  }
}

TEST_CASE("binary search agrees with the sweep") {
  Gen g(89);
  for (int t = 0; t < 15; ++t) {
    const Instance inst = g.instance(3, 6, 1, 2);
    CHECK(solve(inst).bottleneck == doctest::Approx(solve(inst, {.sweep = true}).bottleneck).epsilon(1e-9));
  }
}
