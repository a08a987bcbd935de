#include "fixtures.hpp"
#include "oracles.hpp"

#include "formplan/errors.hpp"
#include "formplan/trajectory.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace formplan;

namespace {

const FormationOffsets kBase{Vector3(0, 2, 0), Vector3(-2, -1, 0), Vector3(2, -1, 0)};

bool near(const Vector3& a, const Vector3& b, double tol = 1e-12) { return (a - b).norm() <= tol; }

Polyline straight(double length) {
  const std::vector<Point3> pts{{0, 0, 10}, {length, 0, 10}};
  return Polyline(pts);
}

// Rolls the per-UAV commanded speed forward along the UAV's own path and
// reports where it is at the end of the window.
double rolled_distance(const std::vector<double>& time, const std::vector<double>& speed, double t0, double t1) {
  double d = 0;
  for (std::size_t k = 0; k + 1 < time.size(); ++k) {
    const double a = std::max(time[k], t0), b = std::min(time[k + 1], t1);
    if (b > a) d += speed[k] * (b - a);
  }
  return d;
}

}  // namespace

TEST_CASE("timestamps") {
  const auto t = make_timestamps(1.0, 0.25);
  CHECK(t == std::vector<double>{0, 0.25, 0.5, 0.75, 1.0});
  const auto u = make_timestamps(1.05, 0.5);
  REQUIRE(u.size() == 4);
  CHECK(u.back() == 1.05);
  CHECK_THROWS_AS(make_timestamps(1.0, 0.0), ContractViolation);
}

TEST_CASE("offsets outside, inside and halfway through a window") {
  const auto target = shape_offsets(ShapeSpec::alignment(AlignmentAxis::vertical, 1.2), kBase);
  const std::vector<ReconfigPlan> plans{ReconfigPlan::from_times(0, ShapeSpec::triangle(), target, 10, 14, 16, 20, 3)};
  CHECK(offsets_at(plans, kBase, 5) == kBase);
  CHECK(offsets_at(plans, kBase, 25) == kBase);
  CHECK(offsets_at(plans, kBase, 15) == target);
  const auto half = offsets_at(plans, kBase, 12);
  for (int n = 0; n < 3; ++n) CHECK(near(half[n], 0.5 * (kBase[n] + target[n])));
  const auto back = offsets_at(plans, kBase, 18);
  for (int n = 0; n < 3; ++n) CHECK(near(back[n], 0.5 * (kBase[n] + target[n])));
}

TEST_CASE("blended offsets always sum to zero") {
  const auto target = shape_offsets(ShapeSpec::rotation(RotationAxis::forward, 1.0), kBase);
  const std::vector<ReconfigPlan> plans{ReconfigPlan::from_times(0, ShapeSpec::triangle(), target, 10, 14, 16, 20, 3)};
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> t(0, 30);
  for (int i = 0; i < 1000; ++i) {
    const auto o = offsets_at(plans, kBase, t(rng));
    CHECK((o[0] + o[1] + o[2]).norm() < 1e-12);
  }
}

TEST_CASE("to_inertial") {
  CHECK(to_inertial(Vector3(0, 2, 0), 0.0) == Vector3(0, 2, 0));
  CHECK(near(to_inertial(Vector3(0, 2, 0), std::numbers::pi / 2), Vector3(-2, 0, 0)));
}

TEST_CASE("uav_path") {
  const std::vector<Point3> c{{0, 0, 0}, {1, 2, 3}, {4, 4, 4}};
  const std::vector<Vector3> zero(3, Vector3::Zero());
  CHECK(uav_path(c, zero) == c);
  const std::vector<Vector3> shift(3, Vector3(1, -1, 2));
  const auto p = uav_path(c, shift);
  for (std::size_t k = 0; k < 3; ++k) CHECK(p[k] == c[k] + Vector3(1, -1, 2));
  CHECK_THROWS_AS(uav_path(c, std::vector<Vector3>(2, Vector3::Zero())), ContractViolation);
}

TEST_CASE("UAV mean tracks the centroid on a curved path with a window") {
  const std::vector<Point3> pts{{0, 0, 10}, {30, 5, 10}, {50, -10, 11}, {90, 0, 9}};
  const Polyline path(pts);
  const auto target = shape_offsets(ShapeSpec::shrink(0.5), kBase);
  const std::vector<ReconfigPlan> plans{ReconfigPlan::from_times(0, ShapeSpec::shrink(0.5), target, 5, 9, 12, 16, 3)};
  const FormationTrajectory traj(path, kBase, plans, 3.0, 3.0);
  const auto g = generate_commands(traj, 0.1, 8.0);
  for (std::size_t k = 0; k < g.time.size(); ++k) {
    const Point3 m = centroid(g.commands[0].position[k], g.commands[1].position[k], g.commands[2].position[k]);
    CHECK((m - g.centroid[k]).norm() <= 1e-9);
    CHECK((g.centroid[k] - path.point_at(3.0 * g.time[k])).norm() <= 1e-9);
  }
}

TEST_CASE("zero extra distance keeps the nominal speed") {
  const FormationTrajectory traj(straight(100), kBase, {}, 3.0, 3.0);
  const auto g = generate_commands(traj, 0.1, 8.0);
  for (const auto& c : g.commands)
    for (double v : c.speed) CHECK(v == 3.0);
  CHECK(g.windows.empty());
}

TEST_CASE("window speed is nominal plus extra distance over window time") {
  // UAV2 moves 3 m sideways over a 2 s window on a straight path: d' = sqrt(36 + 9), d = 6.
  FormationOffsets target = kBase;
  target[1] = kBase[1] + Vector3(-3, 0, 0);
  target[2] = kBase[2] + Vector3(3, 0, 0);
  const std::vector<ReconfigPlan> plans{ReconfigPlan::from_times(0, ShapeSpec::triangle(), target, 10, 12, 14, 16, 3)};
  const FormationTrajectory traj(straight(100), kBase, plans, 3.0, 3.0);
  const auto g = generate_commands(traj, 0.1, 8.0);
  const double expected = 3.0 + (std::sqrt(45.0) - 6.0) / 2.0;
  bool seen = false;
  for (const auto& w : g.windows) {
    if (w.uav != 1 || w.phase != WindowPhase::transformation) continue;
    seen = true;
    CHECK(w.nominal_distance == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(w.transformed_distance == doctest::Approx(std::sqrt(45.0)).epsilon(1e-9));
    CHECK(w.speed == doctest::Approx(expected).epsilon(1e-9));
  }
  CHECK(seen);
  // UAV1 keeps its offset, so its speed never changes
  for (double v : g.commands[0].speed) CHECK(v == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("3 m of extra distance over 2 s gives 4.5 m/s") {
  // UAV2 slides 3 m backwards along a straight path while the window lasts
  FormationOffsets target = kBase;
  target[1] = kBase[1] + Vector3(0, 3, 0);
  target[2] = kBase[2] + Vector3(0, -3, 0);
  const std::vector<ReconfigPlan> plans{ReconfigPlan::from_times(0, ShapeSpec::triangle(), target, 10, 12, 14, 16, 3)};
  const FormationTrajectory traj(straight(100), kBase, plans, 3.0, 3.0);
  const auto g = generate_commands(traj, 0.1, 8.0);
  for (const auto& w : g.windows)
    if (w.uav == 1 && w.phase == WindowPhase::transformation) CHECK(w.speed == doctest::Approx(4.5).epsilon(1e-9));
}

TEST_CASE("rolling out the speed profile reaches the morphed positions on a straight path") {
  FormationOffsets target = kBase;
  target[1] = kBase[1] + Vector3(0, 2, 0);
  target[2] = kBase[2] + Vector3(0, -2, 0);
  const std::vector<ReconfigPlan> plans{ReconfigPlan::from_times(0, ShapeSpec::triangle(), target, 10, 14, 18, 22, 3)};
  const FormationTrajectory traj(straight(120), kBase, plans, 3.0, 3.0);
  const auto g = generate_commands(traj, 0.1, 8.0);
  for (std::size_t n = 0; n < 3; ++n) {
    for (auto [a, b] : {std::pair{10.0, 14.0}, std::pair{18.0, 22.0}, std::pair{0.0, 30.0}}) {
      const double rolled = rolled_distance(g.time, g.commands[n].speed, a, b);
      const double actual = traj.arc_length(n, a, b, false);
      CHECK(rolled == doctest::Approx(actual).epsilon(1e-6));
    }
  }
}

TEST_CASE("speeds above the limit raise a warning naming the UAV and window") {
  FormationOffsets target = kBase;
  target[1] = kBase[1] + Vector3(0, 12, 0);
  target[2] = kBase[2] + Vector3(0, -12, 0);
  const std::vector<ReconfigPlan> plans{ReconfigPlan::from_times(3, ShapeSpec::triangle(), target, 10, 12, 14, 16, 3)};
  const FormationTrajectory traj(straight(100), kBase, plans, 3.0, 3.0);
  const auto g = generate_commands(traj, 0.1, 8.0);
  REQUIRE_FALSE(g.warnings.empty());
  CHECK(g.warnings[0].find("UAV2") != std::string::npos);
  CHECK(g.warnings[0].find("IWP 3") != std::string::npos);
}

TEST_CASE("validation examples") {
  Scenario s = fixtures::open_field();
  s.workspace.obstacles = {fixtures::pier(50, -2, 1), fixtures::pier(50, 2, 1)};

  auto commands_for = [&](const std::vector<ReconfigPlan>& plans) {
    const FormationTrajectory traj(straight(100), kBase, plans, 3.0, 3.0);
    return generate_commands(traj, 0.1, 8.0).commands;
  };

  const auto rigid = validate(commands_for({}), s);
  CHECK(rigid.count(ViolationKind::clearance) > 0);
  CHECK(rigid.count(ViolationKind::separation) == 0);

  const auto line = shape_offsets(ShapeSpec::alignment(AlignmentAxis::vertical, 1.2), kBase);
  const auto aligned =
      validate(commands_for({ReconfigPlan::from_times(0, ShapeSpec::triangle(), line, 8, 14, 19, 25, 3)}), s);
  CHECK(aligned.ok());

  auto swapped = commands_for({});
  swapped[2].position = swapped[1].position;
  const auto clash = validate(swapped, fixtures::open_field());
  CHECK(clash.count(ViolationKind::separation) == clash.violations.size());
  CHECK(clash.violations.front().uavs == std::vector<std::size_t>{2, 3});
  CHECK(clash.violations.front().value == 0.0);

  Scenario low = fixtures::open_field();
  low.workspace.z_min = 10.5;
  CHECK(validate(commands_for({}), low).count(ViolationKind::altitude) > 0);

  Scenario close = fixtures::open_field();
  close.safety.comm_range = 3.0;
  CHECK(validate(commands_for({}), close).count(ViolationKind::communication) > 0);
}

TEST_CASE("standoff is checked only within inspection range") {
  Scenario s = fixtures::open_field();
  s.workspace.surface.points = {{0, -4}, {100, -4}};
  s.workspace.surface.height = 20;
  const FormationTrajectory traj(straight(100), kBase, {}, 3.0, 3.0);
  const auto c = generate_commands(traj, 0.5, 8.0).commands;
  // heading +x puts UAV2 at y = +2 and UAV3 at y = -2: standoff 6 and 2
  const auto r = validate(c, s);
  CHECK(r.count(ViolationKind::standoff) > 0);
  for (const auto& v : r.violations) {
    CHECK(v.kind == ViolationKind::standoff);
    CHECK(v.uavs == std::vector<std::size_t>{2});
  }

  s.workspace.surface.points = {{0, -40}, {100, -40}};
  CHECK(validate(c, s).ok());
}
