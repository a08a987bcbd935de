#pragma once

#include "formplan/formation.hpp"
#include "formplan/geometry.hpp"
#include "formplan/scenario.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace formplan {

/// Timestamped position and ground-speed commands for one UAV.
struct TrajectoryCommand {
  std::vector<double> time;
  std::vector<Point3> position;
  std::vector<double> speed;
};

using CommandSet = std::array<TrajectoryCommand, 3>;

/// 0, dt, 2 dt, ... up to `duration`, with `duration` appended when it is not on the grid.
std::vector<double> make_timestamps(double duration, double dt);

/// Offsets (formation frame) at time `t`: nominal outside every window,
/// linear blends in [t1, t2] and [t3, t4], the target shape in [t2, t3].
FormationOffsets offsets_at(std::span<const ReconfigPlan> plans, const FormationOffsets& base, double t);

std::vector<FormationOffsets> offset_series(std::span<const ReconfigPlan> plans, const FormationOffsets& base,
                                            std::span<const double> times);

Vector3 to_inertial(const Vector3& offset, double heading);

/// Pointwise sum of the centroid path and per-sample inertial offsets.
std::vector<Point3> uav_path(std::span<const Point3> centroid, std::span<const Vector3> inertial_offsets);

/// Continuous-time reference for the whole formation.
///
/// The centroid moves along `path` at constant nominal speed. The formation
/// yaw follows the horizontal chord spanning +/- `heading_smoothing` metres of
/// arc length around the current point, which keeps the yaw continuous
/// through waypoint corners.
class FormationTrajectory {
 public:
  FormationTrajectory(Polyline path, FormationOffsets base, std::vector<ReconfigPlan> plans, double nominal_speed,
                      double heading_smoothing);

  [[nodiscard]] double duration() const { return path_.length() / speed_; }
  [[nodiscard]] double nominal_speed() const { return speed_; }
  [[nodiscard]] const Polyline& path() const { return path_; }
  [[nodiscard]] const FormationOffsets& base() const { return base_; }
  [[nodiscard]] const std::vector<ReconfigPlan>& plans() const { return plans_; }

  [[nodiscard]] Point3 centroid(double t) const;
  [[nodiscard]] double heading(double t) const;
  [[nodiscard]] FormationOffsets offsets(double t) const;
  [[nodiscard]] Point3 uav(std::size_t n, double t) const;
  /// Where UAV n would be with the nominal shape held throughout.
  [[nodiscard]] Point3 nominal_uav(std::size_t n, double t) const;

  /// Arc length of UAV n's path over [t0, t1], sampled every `step` seconds.
  [[nodiscard]] double arc_length(std::size_t n, double t0, double t1, bool nominal, double step = 0.005) const;

 private:
  Polyline path_;
  FormationOffsets base_;
  std::vector<ReconfigPlan> plans_;
  double speed_;
  double smoothing_;
  Vector3 fallback_direction_;
};

enum class WindowPhase { transformation, reconfiguration };

/// Ground speed held by one UAV over one morph window.
struct SpeedWindow {
  std::size_t iwp = 0;
  std::size_t uav = 0;
  WindowPhase phase = WindowPhase::transformation;
  double t_begin = 0.0;
  double t_end = 0.0;
  double nominal_distance = 0.0;
  double transformed_distance = 0.0;
  double speed = 0.0;
};

struct VelocityProfile {
  std::array<std::vector<double>, 3> speed;
  std::vector<SpeedWindow> windows;
  std::vector<std::string> warnings;
};

/// Nominal speed outside the morph windows; inside a window of length T the
/// speed is nominal + (d' - d) / T, where d' and d are the UAV's path lengths
/// with and without the shape change. Speeds above `max_speed` produce a warning.
VelocityProfile velocity_profile(const FormationTrajectory& trajectory, std::span<const double> times,
                                 double max_speed);

struct GeneratedTrajectory {
  std::vector<double> time;
  std::vector<Point3> centroid;
  std::vector<double> heading;
  CommandSet commands;
  std::vector<SpeedWindow> windows;
  std::vector<std::string> warnings;
};

GeneratedTrajectory generate_commands(const FormationTrajectory& trajectory, double dt, double max_speed);

enum class ViolationKind { separation, communication, standoff, clearance, altitude };
std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind = ViolationKind::separation;
  double time = 0.0;
  std::vector<std::size_t> uavs;  // 1-based
  std::optional<std::size_t> obstacle;
  double value = 0.0;
  double limit = 0.0;

  [[nodiscard]] std::string describe() const;
};

struct ValidationReport {
  std::vector<Violation> violations;

  [[nodiscard]] bool ok() const { return violations.empty(); }
  [[nodiscard]] std::size_t count(ViolationKind kind) const;
};

/// Checks every emitted timestep: pairwise separation within [2 r_Q, d_com],
/// surface standoff while the formation is within inspection range, per-UAV
/// obstacle clearance of at least r_Q + margin, and the altitude band.
ValidationReport validate(const CommandSet& commands, const Scenario& scenario);

}  // namespace formplan
