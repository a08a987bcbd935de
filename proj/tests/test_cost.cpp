#include "fixtures.hpp"
#include "oracles.hpp"

#include "formplan/cost.hpp"
#include "formplan/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace formplan;

namespace {

SafeRadiusFn constant_radius(double r) {
  return [r](std::size_t, std::size_t, const Point3&) { return r; };
}

}  // namespace

TEST_CASE("discretize a straight two-point path") {
  const std::vector<Point3> pts{{0, 0, 0}, {10, 0, 0}};
  const auto d = discretize(pts, 10);
  REQUIRE(d.nodes.size() == 11);
  REQUIRE(d.segment_count() == 10);
  for (std::size_t l = 0; l < 10; ++l) {
    CHECK((d.nodes[l + 1] - d.nodes[l]).norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.nodes[l].y() == 0.0);
  }
  CHECK(j1_length(d) == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("discretize preserves length and keeps control vertices") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-30, 30);
  for (int i = 0; i < 50; ++i) {
    std::vector<Point3> pts;
    for (int k = 0; k < 9; ++k) pts.emplace_back(u(rng), u(rng), 10 + u(rng) / 10);
    const auto d = discretize(pts, 100);
    CHECK(d.segment_count() == 100);
    CHECK(j1_length(d) == doctest::Approx(oracle::j1(pts)).epsilon(1e-12));
    for (const auto& v : pts)
      CHECK(std::any_of(d.nodes.begin(), d.nodes.end(), [&](const Point3& n) { return (n - v).norm() < 1e-12; }));
  }
}

TEST_CASE("discretize rejects too few segments") {
  const std::vector<Point3> pts{{0, 0, 0}, {1, 0, 0}, {2, 1, 0}, {3, 0, 0}};
  CHECK_THROWS_AS(discretize(pts, 2), ContractViolation);
  const std::vector<Point3> same{{1, 1, 1}, {1, 1, 1}};
  CHECK_THROWS_AS(discretize(same, 10), ContractViolation);
}

TEST_CASE("J1 of a 3-4-5 segment and a refined circle") {
  CHECK(j1_length(discretize(std::vector<Point3>{{0, 0, 0}, {3, 4, 0}}, 1)) == doctest::Approx(5.0));

  // Inscribed polygons converge to the circumference from below.
  double prev = 0;
  for (int n : {8, 32, 128, 512}) {
    std::vector<Point3> pts;
    for (int k = 0; k <= n; ++k) {
      const double a = 2 * std::numbers::pi * k / n;
      pts.emplace_back(std::cos(a), std::sin(a), 1);
    }
    const double len = j1_length(discretize(pts, n));
    CHECK(len > prev);
    CHECK(len < 2 * std::numbers::pi);
    prev = len;
  }
  CHECK(prev == doctest::Approx(2 * std::numbers::pi).epsilon(1e-4));
}

TEST_CASE("J2 examples") {
  const std::vector<CylinderObstacle> obs{fixtures::pier(0, 10, 1)};
  const auto far = discretize(std::vector<Point3>{{-5, 0, 5}, {5, 0, 5}}, 10);
  CHECK(j2_violation(far, obs, constant_radius(3)) == 0.0);
  CHECK(j2_violation(far, {}, constant_radius(3)) == 0.0);

  // One midpoint on the obstacle axis, the others well clear.
  const std::vector<CylinderObstacle> axis{fixtures::pier(0.5, 0, 0.2)};
  const auto d = discretize(std::vector<Point3>{{0, 0, 5}, {10, 0, 5}}, 10);
  CHECK(j2_violation(d, axis, constant_radius(0.3)) == doctest::Approx(1.0 / 10).epsilon(1e-12));
}

TEST_CASE("J2 matches the double-loop oracle on small instances") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-10, 10), r(0.5, 3), rs(1, 6);
  for (int i = 0; i < 100; ++i) {
    std::vector<CylinderObstacle> obs;
    for (int k = 0; k < 3; ++k) obs.push_back(fixtures::pier(u(rng), u(rng), r(rng), 8));
    std::vector<double> radius{rs(rng), rs(rng), rs(rng)};
    auto fn = [&](std::size_t, std::size_t k, const Point3&) { return radius[k]; };
    std::vector<Point3> pts{{u(rng), u(rng), 5}, {u(rng), u(rng), 6}, {u(rng), u(rng), 9}};
    const auto d = discretize(pts, 8);
    const double got = j2_violation(d, obs, fn);
    CHECK(oracle::relative_error(got, oracle::j2(d.nodes, obs, fn)) <= 1e-12);
    CHECK(got >= 0.0);
    CHECK(got <= 1.0);
  }
}

TEST_CASE("J3 examples") {
  const auto in_band = discretize(std::vector<Point3>{{0, 0, 10}, {10, 0, 10}}, 5);
  CHECK(j3_altitude(in_band, 7, 15) == 0.0);

  DiscretizedPath one;
  one.nodes = {{0, 0, 16}, {1, 0, 16}};
  one.midpoints = {{0.5, 0, 16}};
  CHECK(j3_altitude(one, 7, 15) == doctest::Approx(1.0));

  DiscretizedPath ground;
  ground.nodes = {{0, 0, -1}, {1, 0, -1}};
  ground.midpoints = {{0.5, 0, -1}};
  CHECK(j3_altitude(ground, 7, 15) >= kGroundPenalty);
}

TEST_CASE("JR examples") {
  DiscretizedPath d;
  d.nodes = {{-0.5, 0, 5}, {0.5, 0, 5}, {2.5, 0, 5}};
  d.midpoints = {{0, 0, 5}, {2, 0, 5}};
  CHECK(jr_iwp_attraction(d, std::vector<Point2>{{1, 0}}) == doctest::Approx(1.0));
  DiscretizedPath same;
  same.midpoints = {{3, 4, 1}, {3, 4, 9}};
  CHECK(jr_iwp_attraction(same, std::vector<Point2>{{3, 4}}) == 0.0);
  CHECK(jr_iwp_attraction(same, {}) == 0.0);
}

TEST_CASE("total cost composes the four terms") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-20, 20), z(-3, 20);
  CostModel m;
  m.obstacles = {fixtures::pier(0, 0, 2), fixtures::pier(5, 5, 1)};
  m.safe_radius = constant_radius(4);
  m.z_min = 7;
  m.z_max = 15;
  m.iwps = {{1, 2}};
  m.weights = {1.5, 100, 10, 0.5};
  m.segments = 40;
  for (int i = 0; i < 20; ++i) {
    std::vector<Point3> pts{{u(rng), u(rng), 10}, {u(rng), u(rng), z(rng)}, {u(rng), u(rng), 10}};
    const auto c = total_cost(pts, m);
    const auto d = discretize(pts, 40);
    CHECK(c.j1 == j1_length(d));
    CHECK(c.total == doctest::Approx(1.5 * c.j1 + 100 * c.j2 + 10 * c.j3 + 0.5 * c.jr).epsilon(1e-14));
  }

  CostModel plain;
  plain.weights = {1, 0, 0, 0};
  plain.z_min = 7;
  plain.z_max = 15;
  const std::vector<Point3> pts{{0, 0, 1}, {3, 4, 1}};
  const auto c = total_cost(pts, plain);
  CHECK(c.total == doctest::Approx(5.0));
}

TEST_CASE("cost weights must be usable") {
  CHECK_THROWS_AS((CostWeights{-1, 1, 1, 1}.validate()), ContractViolation);
  CHECK_THROWS_AS((CostWeights{0, 0, 0, 1}.validate()), ContractViolation);
  CHECK_NOTHROW((CostWeights{1, 0, 0, 0}.validate()));
}
