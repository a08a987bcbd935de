#pragma once

#include "formplan/cost.hpp"
#include "formplan/formation.hpp"
#include "formplan/iwp.hpp"
#include "formplan/scenario.hpp"
#include "formplan/theta_pso.hpp"
#include "formplan/trajectory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace formplan {

PsoParams pso_params(const PlannerSettings& planner);
CostWeights cost_weights(const PlannerSettings& planner);

/// A detected waypoint together with what the planner decided for it.
struct PlannedIwp {
  std::size_t index = 0;
  IntermediateWaypoint iwp;
  ShapeSpec shape;
  FormationOffsets target{};
  double zone_radius = 0.0;
  /// Path altitude at the nearest arc length; set once a path exists.
  double altitude = 0.0;
  std::optional<PassageInterval> passage;

  [[nodiscard]] bool traversed() const { return passage.has_value(); }
};

/// Required clearance per (segment midpoint, obstacle): the rigid formation's
/// everywhere, except that the two obstacles of a waypoint only demand the
/// chosen shape's lateral half-width inside that waypoint's zone.
SafeRadiusFn make_safe_radius(const SafetyConstraints& safety, double formation_radius,
                              const std::vector<PlannedIwp>& iwps);

/// Detects waypoints and picks a shape for each by priority. Waypoints whose
/// feasible shapes are all excluded from the priority list are dropped.
std::vector<PlannedIwp> plan_iwps(const Scenario& scenario);

/// Centroid altitude band that keeps every UAV of every shape in use inside
/// the workspace band.
AxisRange centroid_altitude_band(const Scenario& scenario, const std::vector<PlannedIwp>& iwps);

struct PlanResult {
  double formation_radius = 0.0;
  AxisRange centroid_altitude;
  std::vector<PlannedIwp> iwps;
  PsoResult optimization;
  std::vector<ReconfigPlan> plans;
  GeneratedTrajectory trajectory;
  ValidationReport validation;
  std::vector<std::string> warnings;
};

/// Full pipeline: detect waypoints, optimise the centroid path, schedule the
/// reconfigurations, generate per-UAV commands and validate them.
/// Throws InfeasibleError or ScheduleError when a stage cannot proceed.
PlanResult plan_mission(const Scenario& scenario, bool reconfigure = true);

}  // namespace formplan
