#include "formplan/iwp.hpp"

#include "formplan/errors.hpp"

#include <algorithm>
#include <cmath>

namespace formplan {

GapGeometry gap_geometry(const CylinderObstacle& p, const CylinderObstacle& q) {
  const Point2 d = q.center - p.center;
  const double dist = d.norm();
  if (dist == 0.0) throw ContractViolation("degenerate obstacle pair: coincident centres");
  const Point2 u = d / dist;
  GapGeometry g;
  g.near_p = p.center + p.radius * u;
  g.near_q = q.center - q.radius * u;
  g.width = std::max(dist - p.radius - q.radius, 0.0);
  return g;
}

double rigid_clearance(const SafetyConstraints& safety, double formation_radius) {
  return formation_radius + safety.uav_radius + safety.clearance_margin;
}

PassageBand passage_band(const SafetyConstraints& safety, double formation_radius) {
  return {2.0 * safety.uav_radius + safety.clearance_margin, 2.0 * rigid_clearance(safety, formation_radius)};
}

bool IntermediateWaypoint::allows(ShapeKind kind) const {
  return std::any_of(feasible.begin(), feasible.end(), [&](const ShapeSpec& s) { return s.kind == kind; });
}

std::vector<ShapeSpec> shape_feasibility(const IntermediateWaypoint& gap, const SafetyConstraints& safety,
                                         const ReconfigSettings& shapes, const FormationOffsets& base,
                                         const InspectionSurface& surface) {
  const double half_gap = 0.5 * gap.gap_width;
  const double body = safety.uav_radius + safety.clearance_margin;

  std::vector<ShapeSpec> candidates;
  candidates.push_back(ShapeSpec::alignment(shapes.alignment_axis, shapes.alignment_spacing));
  candidates.push_back(ShapeSpec::rotation(shapes.rotation_axis, shapes.rotation_angle));
  {
    double scale = shapes.shrink_scale;
    const double base_half = lateral_half_width(base);
    if (base_half > 0.0) scale = std::min(scale, (half_gap - body) / base_half);
    if (scale > 0.0) candidates.push_back(ShapeSpec::shrink(scale));
  }

  // Travel through the gap is perpendicular to the line joining the facing points.
  const Point2 across = gap.near_q - gap.near_p;
  const Vector3 travel(-across.y(), across.x(), 0.0);
  const Eigen::Matrix3d to_inertial = rotation_matrix(heading_for_direction(travel));
  const bool near_surface =
      !surface.empty() && distance_to_surface(Point3(gap.position.x(), gap.position.y(), 0.0), surface) <=
                              safety.standoff_max + shapes.inspection_range_extra;

  std::vector<ShapeSpec> feasible;
  for (const auto& spec : candidates) {
    const FormationOffsets offsets = shape_offsets(spec, base);
    // the fitted shrink scale sits exactly on this bound
    if (lateral_half_width(offsets) + body > half_gap + 1e-9) continue;
    if (min_pairwise_distance(offsets) < 2.0 * safety.uav_radius) continue;
    if (max_pairwise_distance(offsets) > safety.comm_range) continue;
    if (near_surface) {
      bool ok = true;
      for (const auto& o : offsets) {
        const Vector3 w = to_inertial * o;
        const Point3 uav(gap.position.x() + w.x(), gap.position.y() + w.y(), 0.0);
        const double ds = distance_to_surface(uav, surface);
        ok = ok && ds >= safety.standoff_min && ds <= safety.standoff_max;
      }
      if (!ok) continue;
    }
    feasible.push_back(spec);
  }
  return feasible;
}

std::vector<IntermediateWaypoint> detect_iwps(const Scenario& scenario, double formation_radius) {
  const auto& obstacles = scenario.workspace.obstacles;
  const PassageBand band = passage_band(scenario.safety, formation_radius);
  std::vector<IntermediateWaypoint> out;

  for (std::size_t p = 0; p < obstacles.size(); ++p) {
    for (std::size_t q = p + 1; q < obstacles.size(); ++q) {
      const double centre_dist = (obstacles[q].center - obstacles[p].center).norm();
      if (centre_dist == 0.0 || centre_dist >= scenario.reconfig.neighborhood_radius) continue;
      const GapGeometry g = gap_geometry(obstacles[p], obstacles[q]);
      if (g.width <= 0.0 || !band.contains(g.width)) continue;

      bool blocked = false;
      for (std::size_t k = 0; k < obstacles.size() && !blocked; ++k) {
        if (k == p || k == q) continue;
        blocked = point_segment_distance(obstacles[k].center, g.near_p, g.near_q) < obstacles[k].radius;
      }
      if (blocked) continue;

      IntermediateWaypoint iwp;
      iwp.p = p;
      iwp.q = q;
      iwp.near_p = g.near_p;
      iwp.near_q = g.near_q;
      iwp.position = 0.5 * (g.near_p + g.near_q);
      iwp.gap_width = g.width;
      iwp.feasible = shape_feasibility(iwp, scenario.safety, scenario.reconfig, scenario.mission.offsets,
                                       scenario.workspace.surface);
      if (iwp.feasible.empty()) continue;
      out.push_back(std::move(iwp));
    }
  }
  return out;
}

std::optional<ShapeSpec> choose_shape(const IntermediateWaypoint& iwp, std::span<const ShapeKind> priority) {
  for (auto kind : priority)
    for (const auto& spec : iwp.feasible)
      if (spec.kind == kind) return spec;
  return std::nullopt;
}

double reconfiguration_zone_radius(const IntermediateWaypoint& iwp, std::span<const CylinderObstacle> obstacles,
                                   double rigid_clearance) {
  double r = 0.0;
  for (std::size_t k : {iwp.p, iwp.q}) {
    const auto& o = obstacles[k];
    r = std::max(r, (o.center - iwp.position).norm() + o.radius + rigid_clearance);
  }
  return r;
}

std::optional<PassageInterval> passage_interval(const Polyline& path, const IntermediateWaypoint& iwp,
                                                std::span<const CylinderObstacle> obstacles,
                                                double rigid_clearance, double zone_radius, double resolution) {
  const double length = path.length();
  if (length <= 0.0) return std::nullopt;
  const auto samples = static_cast<std::size_t>(std::ceil(length / resolution));
  auto s_of = [&](std::size_t i) { return std::min(static_cast<double>(i) * resolution, length); };
  auto in_zone = [&](std::size_t i) {
    return (horizontal(path.point_at(s_of(i))) - iwp.position).norm() <= zone_radius;
  };

  const double s_closest = path.closest_arclength_2d(iwp.position);
  const auto centre = std::min(static_cast<std::size_t>(std::llround(s_closest / resolution)), samples);
  if (!in_zone(centre)) return std::nullopt;

  std::size_t lo = centre;
  while (lo > 0 && in_zone(lo - 1)) --lo;
  std::size_t hi = centre;
  while (hi < samples && in_zone(hi + 1)) ++hi;

  std::optional<PassageInterval> out;
  for (std::size_t i = lo; i <= hi; ++i) {
    const Point3 c = path.point_at(s_of(i));
    const bool tight = distance_to_obstacle(c, obstacles[iwp.p]) < rigid_clearance ||
                       distance_to_obstacle(c, obstacles[iwp.q]) < rigid_clearance;
    if (!tight) continue;
    if (!out) out = PassageInterval{s_of(i), s_of(i)};
    out->end = s_of(i);
  }
  if (out) {
    // Widen by one sample so the sampled boundary never lands inside the passage.
    out->begin = std::max(out->begin - resolution, s_of(lo));
    out->end = std::min(out->end + resolution, s_of(hi));
  }
  return out;
}

}  // namespace formplan
