#pragma once

#include "formplan/geometry.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace formplan {

struct CylinderObstacle {
  std::string name;
  Point2 center = Point2::Zero();
  double radius = 1.0;
  double height = 1.0;

  bool operator==(const CylinderObstacle&) const = default;
};

/// Vertical facade extruded from a horizontal polyline.
struct InspectionSurface {
  std::vector<Point2> points;
  double height = 0.0;

  [[nodiscard]] bool empty() const { return points.empty(); }
  bool operator==(const InspectionSurface&) const = default;
};

struct Workspace {
  double x_min = 0.0, x_max = 0.0;
  double y_min = 0.0, y_max = 0.0;
  double z_min = 0.0, z_max = 0.0;  // altitude band
  std::vector<CylinderObstacle> obstacles;
  InspectionSurface surface;

  bool operator==(const Workspace&) const = default;
};

struct SafetyConstraints {
  double uav_radius = 0.35;        // r_Q
  double comm_range = 50.0;        // d_com
  double standoff_min = 1.0;       // d_s_min
  double standoff_max = 5.0;       // d_s_max
  double clearance_margin = 0.3;

  bool operator==(const SafetyConstraints&) const = default;
};

using FormationOffsets = std::array<Vector3, 3>;

struct MissionSpec {
  Point3 start = Point3::Zero();
  Point3 goal = Point3::Zero();
  double nominal_speed = 3.0;
  /// Per-UAV offsets from the centroid in the formation frame
  /// (+x right, +y along travel, +z up).
  FormationOffsets offsets{Vector3(0, 2, 0), Vector3(-2, -1, 0), Vector3(2, -1, 0)};

  bool operator==(const MissionSpec&) const = default;
};

enum class ShapeKind { triangle, alignment, rotation, shrink };
enum class AlignmentAxis { vertical, forward, lateral };
enum class RotationAxis { forward, lateral, vertical };

std::string_view to_string(ShapeKind kind);
std::string_view to_string(AlignmentAxis axis);
std::string_view to_string(RotationAxis axis);
std::optional<ShapeKind> parse_shape_kind(std::string_view s);

/// Shape library and scheduling knobs for reconfiguration around narrow passages.
struct ReconfigSettings {
  bool enabled = true;
  std::vector<ShapeKind> shape_priority{ShapeKind::alignment, ShapeKind::shrink, ShapeKind::rotation};
  AlignmentAxis alignment_axis = AlignmentAxis::vertical;
  double alignment_spacing = 1.2;
  RotationAxis rotation_axis = RotationAxis::forward;
  double rotation_angle = std::numbers::pi / 2.0;
  double shrink_scale = 0.5;
  double lead_buffer = 1.0;
  double lag_buffer = 1.0;
  // Window extents in inter-waypoint spans, measured from the narrow region.
  double transform_spans = 2.0;
  double restore_spans = 1.0;
  // Absolute overrides for t2 - t1 and t4 - t3 expressed as distance.
  std::optional<double> transformation_distance;
  std::optional<double> reconfiguration_distance;
  double neighborhood_radius = 30.0;
  double max_speed = 8.0;
  double heading_smoothing = 3.0;
  double timestep = 0.1;
  double inspection_range_extra = 5.0;

  bool operator==(const ReconfigSettings&) const = default;
};

struct PlannerSettings {
  int swarm_size = 100;
  int iterations = 150;
  int waypoints = 7;
  int segments = 100;
  double inertia = 0.7;
  double c1 = 1.5;
  double c2 = 1.5;
  std::uint64_t seed = 1;
  double beta1 = 1.0;
  double beta2 = 1.0e4;
  double beta3 = 10.0;
  double beta_r = 1.0;
  bool seed_straight_line = true;

  bool operator==(const PlannerSettings&) const = default;
};

struct Scenario {
  std::string name;
  Workspace workspace;
  SafetyConstraints safety;
  MissionSpec mission;
  ReconfigSettings reconfig;
  PlannerSettings planner;

  bool operator==(const Scenario&) const = default;
};

/// Throws ScenarioError naming the first violated invariant.
void validate_scenario(const Scenario& scenario);

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);
std::string serialize_scenario(const Scenario& scenario);

/// Distance from `p` to the solid cylinder spanning z in [0, height]: horizontal
/// gap to the side wall alongside it, full 3D distance past either end, 0 inside.
double distance_to_obstacle(const Point3& p, const CylinderObstacle& obstacle);

/// Minimum horizontal distance from `p` to the surface polyline.
double distance_to_surface(const Point3& p, std::span<const Point2> polyline);
double distance_to_surface(const Point3& p, const InspectionSurface& surface);

}  // namespace formplan
