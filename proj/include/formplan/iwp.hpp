#pragma once

#include "formplan/formation.hpp"
#include "formplan/geometry.hpp"
#include "formplan/scenario.hpp"

#include <optional>
#include <span>
#include <vector>

namespace formplan {

/// Facing points on two obstacle circles along the line joining their centres.
struct GapGeometry {
  Point2 near_p = Point2::Zero();
  Point2 near_q = Point2::Zero();
  double width = 0.0;  // 0 when the disks touch or overlap
};

/// Throws ContractViolation when the two centres coincide.
GapGeometry gap_geometry(const CylinderObstacle& p, const CylinderObstacle& q);

/// Clearance the rigid formation needs from an obstacle surface.
double rigid_clearance(const SafetyConstraints& safety, double formation_radius);

/// Gap widths that call for a reconfiguration: wide enough for one UAV,
/// too narrow for the rigid formation. Lower bound inclusive, upper exclusive.
struct PassageBand {
  double lower = 0.0;
  double upper = 0.0;

  [[nodiscard]] bool contains(double width) const { return lower <= width && width < upper; }
};

PassageBand passage_band(const SafetyConstraints& safety, double formation_radius);

struct IntermediateWaypoint {
  std::size_t p = 0;
  std::size_t q = 0;
  Point2 position = Point2::Zero();
  Point2 near_p = Point2::Zero();
  Point2 near_q = Point2::Zero();
  double gap_width = 0.0;
  /// Feasible shapes with their parameters resolved for this gap.
  std::vector<ShapeSpec> feasible;

  [[nodiscard]] bool allows(ShapeKind kind) const;
};

/// Shapes (alignment, rotation, shrink, in that order) that fit through the gap
/// while keeping every UAV pair within [2 r_Q, d_com] and, near the inspection
/// surface, every UAV inside the standoff band. Shrink is scaled down to fit
/// the gap when the configured scale is too large.
std::vector<ShapeSpec> shape_feasibility(const IntermediateWaypoint& gap, const SafetyConstraints& safety,
                                         const ReconfigSettings& shapes, const FormationOffsets& base,
                                         const InspectionSurface& surface);

/// Narrow passages between adjacent obstacle pairs, sorted by (p, q).
///
/// A pair is adjacent when the centres are closer than the neighbourhood
/// radius and no third obstacle blocks the segment between the facing points.
std::vector<IntermediateWaypoint> detect_iwps(const Scenario& scenario, double formation_radius);

/// First shape in `priority` that the waypoint allows.
std::optional<ShapeSpec> choose_shape(const IntermediateWaypoint& iwp, std::span<const ShapeKind> priority);

/// Radius around the waypoint inside which the rigid formation could touch
/// either of its two obstacles.
double reconfiguration_zone_radius(const IntermediateWaypoint& iwp, std::span<const CylinderObstacle> obstacles,
                                   double rigid_clearance);

struct PassageInterval {
  double begin = 0.0;
  double end = 0.0;
};

/// Arc-length interval where the centroid path, while inside the waypoint's
/// reconfiguration zone, comes closer than `rigid_clearance` to either of the
/// waypoint's obstacles. Empty when the path never needs the reconfiguration.
std::optional<PassageInterval> passage_interval(const Polyline& path, const IntermediateWaypoint& iwp,
                                                std::span<const CylinderObstacle> obstacles,
                                                double rigid_clearance, double zone_radius,
                                                double resolution = 0.05);

}  // namespace formplan
