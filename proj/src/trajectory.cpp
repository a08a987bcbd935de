#include "formplan/trajectory.hpp"

#include "formplan/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace formplan {

namespace {

// Comparisons against limits tolerate rounding at the last few ulps.
constexpr double kValidationSlack = 1e-9;

}  // namespace

std::vector<double> make_timestamps(double duration, double dt) {
  if (!(dt > 0.0) || !(duration > 0.0)) throw ContractViolation("duration and timestep must be positive");
  std::vector<double> t;
  const auto steps = static_cast<std::size_t>(std::floor(duration / dt + 1e-9));
  t.reserve(steps + 2);
  for (std::size_t k = 0; k <= steps; ++k) t.push_back(static_cast<double>(k) * dt);
  while (!t.empty() && t.back() > duration) t.pop_back();
  if (duration - t.back() > 1e-9) t.push_back(duration);
  return t;
}

FormationOffsets offsets_at(std::span<const ReconfigPlan> plans, const FormationOffsets& base, double t) {
  for (const auto& p : plans) {
    if (t < p.t1 || t > p.t4) continue;
    if (t <= p.t2) return blend(base, p.target, (t - p.t1) / (p.t2 - p.t1));
    if (t <= p.t3) return p.target;
    return blend(p.target, base, (t - p.t3) / (p.t4 - p.t3));
  }
  return base;
}

std::vector<FormationOffsets> offset_series(std::span<const ReconfigPlan> plans, const FormationOffsets& base,
                                            std::span<const double> times) {
  std::vector<FormationOffsets> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(offsets_at(plans, base, t));
  return out;
}

Vector3 to_inertial(const Vector3& offset, double heading) { return rotation_matrix(heading) * offset; }

std::vector<Point3> uav_path(std::span<const Point3> centroid, std::span<const Vector3> inertial_offsets) {
  if (centroid.size() != inertial_offsets.size()) throw ContractViolation("centroid and offset timelines differ");
  std::vector<Point3> out(centroid.size());
  for (std::size_t k = 0; k < centroid.size(); ++k) out[k] = centroid[k] + inertial_offsets[k];
  return out;
}

FormationTrajectory::FormationTrajectory(Polyline path, FormationOffsets base, std::vector<ReconfigPlan> plans,
                                         double nominal_speed, double heading_smoothing)
    : path_(std::move(path)),
      base_(base),
      plans_(std::move(plans)),
      speed_(nominal_speed),
      smoothing_(heading_smoothing) {
  if (path_.span_count() == 0) throw ContractViolation("centroid path needs two distinct points");
  if (!(speed_ > 0.0)) throw ContractViolation("nominal speed must be positive");
  fallback_direction_ = path_.vertices().back() - path_.vertices().front();
  fallback_direction_.z() = 0.0;
  if (fallback_direction_.norm() == 0.0) fallback_direction_ = Vector3::UnitY();
}

Point3 FormationTrajectory::centroid(double t) const { return path_.point_at(speed_ * t); }

double FormationTrajectory::heading(double t) const {
  const double s = speed_ * t;
  Vector3 chord = Vector3::Zero();
  if (smoothing_ > 0.0) chord = path_.point_at(s + smoothing_) - path_.point_at(s - smoothing_);
  chord.z() = 0.0;
  if (chord.norm() < 1e-9) {
    chord = path_.tangent_at(s);
    chord.z() = 0.0;
  }
  if (chord.norm() < 1e-9) chord = fallback_direction_;
  return heading_for_direction(chord);
}

FormationOffsets FormationTrajectory::offsets(double t) const { return offsets_at(plans_, base_, t); }

Point3 FormationTrajectory::uav(std::size_t n, double t) const {
  return centroid(t) + to_inertial(offsets(t).at(n), heading(t));
}

Point3 FormationTrajectory::nominal_uav(std::size_t n, double t) const {
  return centroid(t) + to_inertial(base_.at(n), heading(t));
}

double FormationTrajectory::arc_length(std::size_t n, double t0, double t1, bool nominal, double step) const {
  if (!(t1 > t0)) return 0.0;
  const auto pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((t1 - t0) / step)));
  auto at = [&](double t) { return nominal ? nominal_uav(n, t) : uav(n, t); };
  double sum = 0.0;
  Point3 prev = at(t0);
  for (std::size_t i = 1; i <= pieces; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(pieces);
    const Point3 cur = at(t);
    sum += (cur - prev).norm();
    prev = cur;
  }
  return sum;
}

VelocityProfile velocity_profile(const FormationTrajectory& trajectory, std::span<const double> times,
                                 double max_speed) {
  const double v = trajectory.nominal_speed();
  VelocityProfile out;

  for (const auto& plan : trajectory.plans()) {
    for (std::size_t n = 0; n < 3; ++n) {
      for (WindowPhase phase : {WindowPhase::transformation, WindowPhase::reconfiguration}) {
        SpeedWindow w;
        w.iwp = plan.iwp;
        w.uav = n;
        w.phase = phase;
        w.t_begin = phase == WindowPhase::transformation ? plan.t1 : plan.t3;
        w.t_end = phase == WindowPhase::transformation ? plan.t2 : plan.t4;
        w.transformed_distance = trajectory.arc_length(n, w.t_begin, w.t_end, false);
        w.nominal_distance = trajectory.arc_length(n, w.t_begin, w.t_end, true);
        w.speed = v + (w.transformed_distance - w.nominal_distance) / (w.t_end - w.t_begin);

        const char* label = phase == WindowPhase::transformation ? "transformation" : "reconfiguration";
        if (w.speed > max_speed) {
          std::ostringstream msg;
          msg << "UAV" << n + 1 << " needs " << w.speed << " m/s in the " << label << " window [" << w.t_begin
              << ", " << w.t_end << "] s of IWP " << plan.iwp << ", above the " << max_speed << " m/s limit";
          out.warnings.push_back(msg.str());
        }
        if (w.speed < 0.0) {
          std::ostringstream msg;
          msg << "UAV" << n + 1 << " speed clamped to 0 in the " << label << " window of IWP " << plan.iwp;
          out.warnings.push_back(msg.str());
          w.speed = 0.0;
        }
        out.windows.push_back(w);
      }
    }
  }

  for (std::size_t n = 0; n < 3; ++n) {
    out.speed[n].assign(times.size(), v);
    for (const auto& w : out.windows) {
      if (w.uav != n) continue;
      for (std::size_t k = 0; k < times.size(); ++k)
        if (times[k] >= w.t_begin && times[k] < w.t_end) out.speed[n][k] = w.speed;
    }
  }
  return out;
}

GeneratedTrajectory generate_commands(const FormationTrajectory& trajectory, double dt, double max_speed) {
  GeneratedTrajectory out;
  out.time = make_timestamps(trajectory.duration(), dt);
  const std::size_t count = out.time.size();
  out.centroid.reserve(count);
  out.heading.reserve(count);
  for (double t : out.time) {
    out.centroid.push_back(trajectory.centroid(t));
    out.heading.push_back(trajectory.heading(t));
  }
  const auto offsets = offset_series(trajectory.plans(), trajectory.base(), out.time);

  VelocityProfile profile = velocity_profile(trajectory, out.time, max_speed);
  for (std::size_t n = 0; n < 3; ++n) {
    std::vector<Vector3> inertial(count);
    for (std::size_t k = 0; k < count; ++k) inertial[k] = to_inertial(offsets[k][n], out.heading[k]);
    TrajectoryCommand& cmd = out.commands[n];
    cmd.time = out.time;
    cmd.position = uav_path(out.centroid, inertial);
    cmd.speed = std::move(profile.speed[n]);
  }
  out.windows = std::move(profile.windows);
  out.warnings = std::move(profile.warnings);
  return out;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::separation: return "separation";
    case ViolationKind::communication: return "communication";
    case ViolationKind::standoff: return "standoff";
    case ViolationKind::clearance: return "clearance";
    case ViolationKind::altitude: return "altitude";
  }
  return "unknown";
}

std::string Violation::describe() const {
  std::ostringstream s;
  s << "t=" << time << " s " << to_string(kind) << " UAV";
  for (std::size_t i = 0; i < uavs.size(); ++i) s << (i ? "/" : "") << uavs[i];
  if (obstacle) s << " obstacle " << *obstacle;
  s << " value " << value << " limit " << limit;
  return s.str();
}

std::size_t ValidationReport::count(ViolationKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; }));
}

ValidationReport validate(const CommandSet& commands, const Scenario& scenario) {
  const std::size_t count = commands[0].time.size();
  for (const auto& c : commands) {
    if (c.time != commands[0].time || c.position.size() != count || c.speed.size() != count)
      throw ContractViolation("command sequences must share one timeline");
  }

  const SafetyConstraints& s = scenario.safety;
  const Workspace& ws = scenario.workspace;
  const double min_sep = 2.0 * s.uav_radius;
  const double min_clear = s.uav_radius + s.clearance_margin;
  const double inspection_range = s.standoff_max + scenario.reconfig.inspection_range_extra;

  ValidationReport report;
  auto add = [&](ViolationKind kind, double t, std::vector<std::size_t> uavs, std::optional<std::size_t> obstacle,
                 double value, double limit) {
    report.violations.push_back({kind, t, std::move(uavs), obstacle, value, limit});
  };

  for (std::size_t k = 0; k < count; ++k) {
    const double t = commands[0].time[k];
    const Point3& a = commands[0].position[k];
    const Point3& b = commands[1].position[k];
    const Point3& c = commands[2].position[k];
    const std::array<const Point3*, 3> p{&a, &b, &c};

    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j) {
        const double d = (*p[i] - *p[j]).norm();
        if (d < min_sep - kValidationSlack) add(ViolationKind::separation, t, {i + 1, j + 1}, {}, d, min_sep);
        if (d > s.comm_range + kValidationSlack)
          add(ViolationKind::communication, t, {i + 1, j + 1}, {}, d, s.comm_range);
      }
    }

    if (!ws.surface.empty() && distance_to_surface(centroid(a, b, c), ws.surface) <= inspection_range) {
      for (std::size_t i = 0; i < 3; ++i) {
        const double ds = distance_to_surface(*p[i], ws.surface);
        if (ds < s.standoff_min - kValidationSlack)
          add(ViolationKind::standoff, t, {i + 1}, {}, ds, s.standoff_min);
        else if (ds > s.standoff_max + kValidationSlack)
          add(ViolationKind::standoff, t, {i + 1}, {}, ds, s.standoff_max);
      }
    }

    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t o = 0; o < ws.obstacles.size(); ++o) {
        const double d = distance_to_obstacle(*p[i], ws.obstacles[o]);
        if (d < min_clear - kValidationSlack) add(ViolationKind::clearance, t, {i + 1}, o, d, min_clear);
      }
      const double z = p[i]->z();
      if (z < ws.z_min - kValidationSlack) add(ViolationKind::altitude, t, {i + 1}, {}, z, ws.z_min);
      if (z > ws.z_max + kValidationSlack) add(ViolationKind::altitude, t, {i + 1}, {}, z, ws.z_max);
    }
  }
  return report;
}

}  // namespace formplan
