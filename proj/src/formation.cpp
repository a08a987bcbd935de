#include "formplan/formation.hpp"

#include "formplan/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace formplan {

Point3 centroid(const Point3& p1, const Point3& p2, const Point3& p3) { return (p1 + p2 + p3) / 3.0; }

Eigen::Matrix3d rotation_matrix(double heading) {
  return Eigen::AngleAxisd(heading, Vector3::UnitZ()).toRotationMatrix();
}

double heading_for_direction(const Vector3& direction) {
  return std::atan2(direction.y(), direction.x()) - std::numbers::pi / 2.0;
}

double formation_radius(const FormationOffsets& offsets) {
  double r = 0.0;
  for (const auto& o : offsets) r = std::max(r, o.norm());
  return r;
}

Eigen::Matrix3d pairwise_distances(const FormationOffsets& offsets) {
  Eigen::Matrix3d d;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) d(a, b) = (offsets[a] - offsets[b]).norm();
  return d;
}

double min_pairwise_distance(const FormationOffsets& offsets) {
  return std::min({(offsets[0] - offsets[1]).norm(), (offsets[0] - offsets[2]).norm(),
                   (offsets[1] - offsets[2]).norm()});
}

double max_pairwise_distance(const FormationOffsets& offsets) {
  return std::max({(offsets[0] - offsets[1]).norm(), (offsets[0] - offsets[2]).norm(),
                   (offsets[1] - offsets[2]).norm()});
}

double lateral_half_width(const FormationOffsets& offsets) {
  double w = 0.0;
  for (const auto& o : offsets) w = std::max(w, std::abs(o.x()));
  return w;
}

double vertical_half_extent(const FormationOffsets& offsets) {
  double h = 0.0;
  for (const auto& o : offsets) h = std::max(h, std::abs(o.z()));
  return h;
}

FormationState FormationState::from_offsets(const Point3& c, const FormationOffsets& offsets, double heading) {
  return {c, offsets, formation_radius(offsets), heading};
}

Point3 FormationState::uav_position(std::size_t n) const {
  return centroid + rotation_matrix(heading) * offsets.at(n);
}

ShapeSpec ShapeSpec::triangle() { return {}; }

ShapeSpec ShapeSpec::alignment(AlignmentAxis axis, double spacing) {
  ShapeSpec s;
  s.kind = ShapeKind::alignment;
  s.alignment_axis = axis;
  s.spacing = spacing;
  return s;
}

ShapeSpec ShapeSpec::rotation(RotationAxis axis, double angle) {
  ShapeSpec s;
  s.kind = ShapeKind::rotation;
  s.rotation_axis = axis;
  s.rotation_angle = angle;
  return s;
}

ShapeSpec ShapeSpec::shrink(double scale) {
  ShapeSpec s;
  s.kind = ShapeKind::shrink;
  s.scale = scale;
  return s;
}

Vector3 axis_vector(AlignmentAxis axis) {
  switch (axis) {
    case AlignmentAxis::vertical: return Vector3::UnitZ();
    case AlignmentAxis::forward: return Vector3::UnitY();
    case AlignmentAxis::lateral: return Vector3::UnitX();
  }
  return Vector3::UnitZ();
}

Vector3 axis_vector(RotationAxis axis) {
  switch (axis) {
    case RotationAxis::forward: return Vector3::UnitY();
    case RotationAxis::lateral: return Vector3::UnitX();
    case RotationAxis::vertical: return Vector3::UnitZ();
  }
  return Vector3::UnitY();
}

FormationOffsets shape_offsets(const ShapeSpec& spec, const FormationOffsets& base, double min_separation) {
  FormationOffsets out = base;
  switch (spec.kind) {
    case ShapeKind::triangle:
      break;
    case ShapeKind::alignment: {
      if (!(spec.spacing > 0.0)) throw ContractViolation("alignment spacing must be positive");
      const Vector3 a = axis_vector(spec.alignment_axis);
      out = {Vector3::Zero(), -spec.spacing * a, spec.spacing * a};
      break;
    }
    case ShapeKind::rotation: {
      const Eigen::Matrix3d r =
          Eigen::AngleAxisd(spec.rotation_angle, axis_vector(spec.rotation_axis)).toRotationMatrix();
      for (auto& o : out) o = r * o;
      break;
    }
    case ShapeKind::shrink:
      if (!(spec.scale > 0.0 && spec.scale <= 1.0)) throw ContractViolation("shrink scale must lie in (0, 1]");
      for (auto& o : out) o *= spec.scale;
      break;
  }
  const double dmin = min_pairwise_distance(out);
  if (dmin < min_separation) {
    std::ostringstream msg;
    msg << to_string(spec.kind) << " shape puts two UAVs " << dmin << " m apart, below the required "
        << min_separation << " m";
    throw InfeasibleError(msg.str());
  }
  return out;
}

FormationOffsets blend(const FormationOffsets& from, const FormationOffsets& to, double u) {
  FormationOffsets out;
  for (std::size_t n = 0; n < 3; ++n) out[n] = (1.0 - u) * from[n] + u * to[n];
  return out;
}

ReconfigPlan ReconfigPlan::from_times(std::size_t iwp, const ShapeSpec& shape, const FormationOffsets& target,
                                      double t1, double t2, double t3, double t4, double nominal_speed) {
  if (!(t1 < t2 && t2 <= t3 && t3 < t4)) throw ScheduleError("phase times must satisfy t1 < t2 <= t3 < t4");
  if (!(nominal_speed > 0.0)) throw ContractViolation("nominal speed must be positive");
  ReconfigPlan p;
  p.iwp = iwp;
  p.shape = shape;
  p.target = target;
  p.t1 = t1;
  p.t2 = t2;
  p.t3 = t3;
  p.t4 = t4;
  p.s1 = t1 * nominal_speed;
  p.s2 = t2 * nominal_speed;
  p.s3 = t3 * nominal_speed;
  p.s4 = t4 * nominal_speed;
  return p;
}

ScheduleSettings ScheduleSettings::from(const ReconfigSettings& r) {
  ScheduleSettings s;
  s.lead_buffer = r.lead_buffer;
  s.lag_buffer = r.lag_buffer;
  s.transform_spans = r.transform_spans;
  s.restore_spans = r.restore_spans;
  s.transformation_distance = r.transformation_distance;
  s.reconfiguration_distance = r.reconfiguration_distance;
  return s;
}

ReconfigPlan schedule(double passage_begin, double passage_end, double path_length, double span_length,
                      double nominal_speed, const ScheduleSettings& settings, std::size_t iwp,
                      const ShapeSpec& shape, const FormationOffsets& target) {
  if (!(passage_begin <= passage_end)) throw ContractViolation("passage interval is reversed");
  if (!(nominal_speed > 0.0)) throw ContractViolation("nominal speed must be positive");

  const double s2 = passage_begin - settings.lead_buffer;
  const double s3 = passage_end + settings.lag_buffer;
  double s1 = settings.transformation_distance ? s2 - *settings.transformation_distance
                                               : passage_begin - settings.transform_spans * span_length;
  double s4 = settings.reconfiguration_distance ? s3 + *settings.reconfiguration_distance
                                                : passage_end + settings.restore_spans * span_length;

  std::ostringstream msg;
  if (s2 <= 0.0) {
    msg << "IWP " << iwp << ": passage starts " << passage_begin
        << " m into the mission, too early to finish the transformation";
    throw ScheduleError(msg.str());
  }
  if (s3 >= path_length) {
    msg << "IWP " << iwp << ": passage ends " << (path_length - passage_end)
        << " m before the goal, too late to restore the formation";
    throw ScheduleError(msg.str());
  }
  if (!(s1 < s2)) {
    msg << "IWP " << iwp << ": transformation window is empty";
    throw ScheduleError(msg.str());
  }
  if (!(s3 < s4)) {
    msg << "IWP " << iwp << ": restoration window is empty";
    throw ScheduleError(msg.str());
  }
  s1 = std::max(s1, 0.0);
  s4 = std::min(s4, path_length);

  ReconfigPlan p;
  p.iwp = iwp;
  p.shape = shape;
  p.target = target;
  p.s1 = s1;
  p.s2 = s2;
  p.s3 = s3;
  p.s4 = s4;
  p.t1 = s1 / nominal_speed;
  p.t2 = s2 / nominal_speed;
  p.t3 = s3 / nominal_speed;
  p.t4 = s4 / nominal_speed;
  return p;
}

void check_no_overlap(std::vector<ReconfigPlan>& plans) {
  std::sort(plans.begin(), plans.end(), [](const ReconfigPlan& a, const ReconfigPlan& b) {
    return a.t1 < b.t1 || (a.t1 == b.t1 && a.iwp < b.iwp);
  });
  for (std::size_t i = 1; i < plans.size(); ++i) {
    if (plans[i].t1 < plans[i - 1].t4) {
      std::ostringstream msg;
      msg << "reconfiguration windows overlap: IWP " << plans[i - 1].iwp << " [" << plans[i - 1].t1 << ", "
          << plans[i - 1].t4 << "] s and IWP " << plans[i].iwp << " [" << plans[i].t1 << ", " << plans[i].t4
          << "] s";
      throw ScheduleError(msg.str());
    }
  }
}

}  // namespace formplan
