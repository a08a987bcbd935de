#include "formplan/pipeline.hpp"

#include "formplan/errors.hpp"

#include <algorithm>

namespace formplan {

PsoParams pso_params(const PlannerSettings& planner) {
  PsoParams p;
  p.swarm_size = planner.swarm_size;
  p.waypoints = planner.waypoints;
  p.iterations = planner.iterations;
  p.inertia = planner.inertia;
  p.c1 = planner.c1;
  p.c2 = planner.c2;
  p.seed = planner.seed;
  p.seed_straight_line = planner.seed_straight_line;
  return p;
}

CostWeights cost_weights(const PlannerSettings& planner) {
  return {planner.beta1, planner.beta2, planner.beta3, planner.beta_r};
}

SafeRadiusFn make_safe_radius(const SafetyConstraints& safety, double formation_radius,
                              const std::vector<PlannedIwp>& iwps) {
  struct Zone {
    std::size_t p, q;
    Point2 centre;
    double radius;
    double clearance;
  };
  std::vector<Zone> zones;
  zones.reserve(iwps.size());
  for (const auto& w : iwps) {
    zones.push_back({w.iwp.p, w.iwp.q, w.iwp.position, w.zone_radius,
                     lateral_half_width(w.target) + safety.uav_radius + safety.clearance_margin});
  }
  const double rigid = rigid_clearance(safety, formation_radius);
  return [zones = std::move(zones), rigid](std::size_t, std::size_t k, const Point3& m) {
    double r = rigid;
    for (const auto& z : zones) {
      if ((k == z.p || k == z.q) && (horizontal(m) - z.centre).norm() <= z.radius) r = std::min(r, z.clearance);
    }
    return r;
  };
}

std::vector<PlannedIwp> plan_iwps(const Scenario& scenario) {
  const FormationOffsets& base = scenario.mission.offsets;
  const double r_f = formation_radius(base);
  const double rigid = rigid_clearance(scenario.safety, r_f);

  std::vector<PlannedIwp> out;
  for (auto& iwp : detect_iwps(scenario, r_f)) {
    const auto shape = choose_shape(iwp, scenario.reconfig.shape_priority);
    if (!shape) continue;
    PlannedIwp w;
    w.index = out.size();
    w.shape = *shape;
    w.target = shape_offsets(*shape, base, 2.0 * scenario.safety.uav_radius);
    w.zone_radius = reconfiguration_zone_radius(iwp, scenario.workspace.obstacles, rigid);
    w.iwp = std::move(iwp);
    out.push_back(std::move(w));
  }
  return out;
}

AxisRange centroid_altitude_band(const Scenario& scenario, const std::vector<PlannedIwp>& iwps) {
  double h = vertical_half_extent(scenario.mission.offsets);
  for (const auto& w : iwps) h = std::max(h, vertical_half_extent(w.target));
  return {scenario.workspace.z_min + h, scenario.workspace.z_max - h};
}

PlanResult plan_mission(const Scenario& scenario, bool reconfigure) {
  const FormationOffsets& base = scenario.mission.offsets;
  const auto& obstacles = scenario.workspace.obstacles;
  const PlannerSettings& planner = scenario.planner;

  PlanResult result;
  result.formation_radius = formation_radius(base);
  if (reconfigure && scenario.reconfig.enabled) result.iwps = plan_iwps(scenario);
  result.centroid_altitude = centroid_altitude_band(scenario, result.iwps);

  const PathProblem problem = make_path_problem(scenario, result.centroid_altitude);

  CostModel model;
  model.obstacles = obstacles;
  model.safe_radius = make_safe_radius(scenario.safety, result.formation_radius, result.iwps);
  model.z_min = result.centroid_altitude.min;
  model.z_max = result.centroid_altitude.max;
  for (const auto& w : result.iwps) model.iwps.push_back(w.iwp.position);
  model.weights = cost_weights(planner);
  model.weights.validate();
  model.segments = planner.segments;

  result.optimization = optimize(
      problem, [&model](std::span<const Point3> path) { return total_cost(path, model); }, pso_params(planner));

  const Polyline path(result.optimization.path.waypoints);
  const double span = path.length() / static_cast<double>(path.span_count());
  const double rigid = rigid_clearance(scenario.safety, result.formation_radius);
  const ScheduleSettings settings = ScheduleSettings::from(scenario.reconfig);

  for (auto& w : result.iwps) {
    w.altitude = path.point_at(path.closest_arclength_2d(w.iwp.position)).z();
    w.passage = passage_interval(path, w.iwp, obstacles, rigid, w.zone_radius);
    if (!w.passage) continue;
    result.plans.push_back(schedule(w.passage->begin, w.passage->end, path.length(), span,
                                    scenario.mission.nominal_speed, settings, w.index, w.shape, w.target));
  }
  check_no_overlap(result.plans);

  const FormationTrajectory trajectory(path, base, result.plans, scenario.mission.nominal_speed,
                                       scenario.reconfig.heading_smoothing);
  result.trajectory = generate_commands(trajectory, scenario.reconfig.timestep, scenario.reconfig.max_speed);
  result.validation = validate(result.trajectory.commands, scenario);
  result.warnings = result.trajectory.warnings;
  return result;
}

}  // namespace formplan
