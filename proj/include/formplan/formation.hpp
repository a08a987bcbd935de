#pragma once

#include "formplan/geometry.hpp"
#include "formplan/scenario.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

namespace formplan {

// Formation frame: origin at the centroid, +y along the direction of travel,
// +x to the right, +z up. The yaw `heading` rotates formation-frame vectors
// into the inertial frame about the vertical axis.

/// Arithmetic mean of the three UAV positions.
Point3 centroid(const Point3& p1, const Point3& p2, const Point3& p3);

/// Yaw rotation taking formation-frame vectors into the inertial frame.
Eigen::Matrix3d rotation_matrix(double heading);

/// Yaw that points the formation +y axis along the horizontal part of `direction`.
double heading_for_direction(const Vector3& direction);

double formation_radius(const FormationOffsets& offsets);
Eigen::Matrix3d pairwise_distances(const FormationOffsets& offsets);
double min_pairwise_distance(const FormationOffsets& offsets);
double max_pairwise_distance(const FormationOffsets& offsets);
/// Largest |x| in the formation frame: half the width presented to a passage.
double lateral_half_width(const FormationOffsets& offsets);
double vertical_half_extent(const FormationOffsets& offsets);

struct FormationState {
  Point3 centroid = Point3::Zero();
  FormationOffsets offsets{};
  double radius = 0.0;
  double heading = 0.0;

  static FormationState from_offsets(const Point3& centroid, const FormationOffsets& offsets,
                                     double heading = 0.0);
  [[nodiscard]] Point3 uav_position(std::size_t n) const;
};

struct ShapeSpec {
  ShapeKind kind = ShapeKind::triangle;
  AlignmentAxis alignment_axis = AlignmentAxis::vertical;
  double spacing = 1.2;
  RotationAxis rotation_axis = RotationAxis::forward;
  double rotation_angle = 0.0;
  double scale = 1.0;

  static ShapeSpec triangle();
  static ShapeSpec alignment(AlignmentAxis axis, double spacing);
  static ShapeSpec rotation(RotationAxis axis, double angle);
  static ShapeSpec shrink(double scale);

  bool operator==(const ShapeSpec&) const = default;
};

Vector3 axis_vector(AlignmentAxis axis);
Vector3 axis_vector(RotationAxis axis);

/// Offsets of the three UAVs in the requested shape.
///
/// Alignment keeps UAV1 on the centroid with UAV2 and UAV3 at -spacing and
/// +spacing along the axis. Throws InfeasibleError when the resulting minimum
/// pairwise distance falls below `min_separation`.
FormationOffsets shape_offsets(const ShapeSpec& spec, const FormationOffsets& base,
                               double min_separation = 0.0);

/// Linear interpolation between two offset sets, u in [0, 1].
FormationOffsets blend(const FormationOffsets& from, const FormationOffsets& to, double u);

/// One reconfiguration around an intermediate waypoint.
///
/// Arc lengths s1..s4 along the centroid path and times t1..t4 describe the
/// same boundaries; [t1, t2] morphs into `target`, [t2, t3] holds it and
/// [t3, t4] morphs back to the nominal shape.
struct ReconfigPlan {
  std::size_t iwp = 0;
  ShapeSpec shape;
  FormationOffsets target{};
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  double t1 = 0.0, t2 = 0.0, t3 = 0.0, t4 = 0.0;

  [[nodiscard]] double transformation_time() const { return t2 - t1; }
  [[nodiscard]] double reconfiguration_time() const { return t4 - t3; }

  /// Builds a plan from explicit phase times on a constant-speed timeline.
  static ReconfigPlan from_times(std::size_t iwp, const ShapeSpec& shape, const FormationOffsets& target,
                                 double t1, double t2, double t3, double t4, double nominal_speed);
};

struct ScheduleSettings {
  double lead_buffer = 1.0;
  double lag_buffer = 1.0;
  double transform_spans = 2.0;
  double restore_spans = 1.0;
  std::optional<double> transformation_distance;
  std::optional<double> reconfiguration_distance;

  static ScheduleSettings from(const ReconfigSettings& r);
};

/// Places the phase boundaries around the passage [passage_begin, passage_end]
/// (arc lengths along a path of `path_length`).
///
/// The hold interval is the passage widened by the lead/lag buffers. The
/// transformation starts `transform_spans` inter-waypoint spans before the
/// passage and the restoration ends `restore_spans` after it, unless explicit
/// distances are configured. Throws ScheduleError if the windows do not fit.
ReconfigPlan schedule(double passage_begin, double passage_end, double path_length, double span_length,
                      double nominal_speed, const ScheduleSettings& settings, std::size_t iwp,
                      const ShapeSpec& shape, const FormationOffsets& target);

/// Sorts plans by start time; throws ScheduleError naming the first overlapping pair.
void check_no_overlap(std::vector<ReconfigPlan>& plans);

}  // namespace formplan
