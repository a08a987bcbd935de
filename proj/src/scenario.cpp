#include "formplan/scenario.hpp"

#include "formplan/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace formplan {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<ShapeKind, std::string_view>, 4> kShapeNames{{
    {ShapeKind::triangle, "triangle"},
    {ShapeKind::alignment, "alignment"},
    {ShapeKind::rotation, "rotation"},
    {ShapeKind::shrink, "shrink"},
}};

[[noreturn]] void fail(const std::string& msg) { throw ScenarioError(msg); }

void require(bool ok, const std::string& msg) {
  if (!ok) fail(msg);
}

bool finite(const Point3& p) { return p.allFinite(); }

const json& section(const json& root, const char* key) {
  if (!root.contains(key)) fail(std::string("missing section '") + key + "'");
  const json& s = root.at(key);
  if (!s.is_object()) fail(std::string("section '") + key + "' must be an object");
  return s;
}

double number(const json& obj, const char* key) {
  if (!obj.contains(key)) fail(std::string("missing field '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) fail(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

template <typename T>
void optional_field(const json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail(std::string("field '") + key + "' has the wrong type");
  }
}

Point3 point3(const json& obj, const char* key) {
  if (!obj.contains(key)) fail(std::string("missing field '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 3) fail(std::string("field '") + key + "' must be [x, y, z]");
  for (const auto& c : v)
    if (!c.is_number()) fail(std::string("field '") + key + "' must be numeric");
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

Point2 point2(const json& v, const char* what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    fail(std::string(what) + " entries must be [x, y]");
  return {v[0].get<double>(), v[1].get<double>()};
}

json to_json(const Point3& p) { return json::array({p.x(), p.y(), p.z()}); }

AlignmentAxis parse_alignment_axis(const std::string& s) {
  if (s == "vertical") return AlignmentAxis::vertical;
  if (s == "forward") return AlignmentAxis::forward;
  if (s == "lateral") return AlignmentAxis::lateral;
  fail("unknown alignment_axis '" + s + "'");
}

RotationAxis parse_rotation_axis(const std::string& s) {
  if (s == "forward") return RotationAxis::forward;
  if (s == "lateral") return RotationAxis::lateral;
  if (s == "vertical") return RotationAxis::vertical;
  fail("unknown rotation_axis '" + s + "'");
}

void parse_reconfig(const json& r, ReconfigSettings& out) {
  optional_field(r, "enabled", out.enabled);
  if (r.contains("shape_priority")) {
    const json& list = r.at("shape_priority");
    if (!list.is_array()) fail("shape_priority must be an array");
    out.shape_priority.clear();
    for (const auto& item : list) {
      if (!item.is_string()) fail("shape_priority entries must be strings");
      const auto kind = parse_shape_kind(item.get<std::string>());
      if (!kind) fail("unknown shape '" + item.get<std::string>() + "' in shape_priority");
      out.shape_priority.push_back(*kind);
    }
  }
  if (r.contains("alignment_axis")) {
    std::string axis;
    optional_field(r, "alignment_axis", axis);
    out.alignment_axis = parse_alignment_axis(axis);
  }
  optional_field(r, "alignment_spacing_m", out.alignment_spacing);
  if (r.contains("rotation_axis")) {
    std::string axis;
    optional_field(r, "rotation_axis", axis);
    out.rotation_axis = parse_rotation_axis(axis);
  }
  optional_field(r, "rotation_angle_rad", out.rotation_angle);
  optional_field(r, "shrink_scale", out.shrink_scale);
  optional_field(r, "lead_buffer_m", out.lead_buffer);
  optional_field(r, "lag_buffer_m", out.lag_buffer);
  optional_field(r, "transform_spans", out.transform_spans);
  optional_field(r, "restore_spans", out.restore_spans);
  if (r.contains("transformation_distance_m"))
    out.transformation_distance = number(r, "transformation_distance_m");
  if (r.contains("reconfiguration_distance_m"))
    out.reconfiguration_distance = number(r, "reconfiguration_distance_m");
  optional_field(r, "neighborhood_radius_m", out.neighborhood_radius);
  optional_field(r, "max_speed_mps", out.max_speed);
  optional_field(r, "heading_smoothing_m", out.heading_smoothing);
  optional_field(r, "timestep_s", out.timestep);
  optional_field(r, "inspection_range_extra_m", out.inspection_range_extra);
}

void parse_planner(const json& p, PlannerSettings& out) {
  optional_field(p, "swarm_size", out.swarm_size);
  optional_field(p, "iterations", out.iterations);
  optional_field(p, "waypoints", out.waypoints);
  optional_field(p, "segments", out.segments);
  optional_field(p, "inertia", out.inertia);
  optional_field(p, "c1", out.c1);
  optional_field(p, "c2", out.c2);
  optional_field(p, "seed", out.seed);
  optional_field(p, "beta1", out.beta1);
  optional_field(p, "beta2", out.beta2);
  optional_field(p, "beta3", out.beta3);
  optional_field(p, "beta_r", out.beta_r);
  optional_field(p, "seed_straight_line", out.seed_straight_line);
}

}  // namespace

std::string_view to_string(ShapeKind kind) {
  for (const auto& [k, name] : kShapeNames)
    if (k == kind) return name;
  return "unknown";
}

std::string_view to_string(AlignmentAxis axis) {
  switch (axis) {
    case AlignmentAxis::vertical: return "vertical";
    case AlignmentAxis::forward: return "forward";
    case AlignmentAxis::lateral: return "lateral";
  }
  return "unknown";
}

std::string_view to_string(RotationAxis axis) {
  switch (axis) {
    case RotationAxis::forward: return "forward";
    case RotationAxis::lateral: return "lateral";
    case RotationAxis::vertical: return "vertical";
  }
  return "unknown";
}

std::optional<ShapeKind> parse_shape_kind(std::string_view s) {
  for (const auto& [k, name] : kShapeNames)
    if (name == s) return k;
  return std::nullopt;
}

void validate_scenario(const Scenario& sc) {
  const Workspace& ws = sc.workspace;
  require(std::isfinite(ws.x_min) && std::isfinite(ws.x_max) && ws.x_max > ws.x_min,
          "workspace x bounds must satisfy x_max > x_min");
  require(std::isfinite(ws.y_min) && std::isfinite(ws.y_max) && ws.y_max > ws.y_min,
          "workspace y bounds must satisfy y_max > y_min");
  require(std::isfinite(ws.z_min) && std::isfinite(ws.z_max) && ws.z_min > 0.0,
          "altitude band must satisfy z_min > 0");
  require(ws.z_max > ws.z_min, "altitude band must satisfy z_max > z_min");

  for (std::size_t k = 0; k < ws.obstacles.size(); ++k) {
    const auto& o = ws.obstacles[k];
    const std::string id = "obstacle " + std::to_string(k);
    require(o.center.allFinite(), id + " center must be finite");
    require(std::isfinite(o.radius) && o.radius > 0.0, id + " radius must be > 0");
    require(std::isfinite(o.height) && o.height > 0.0, id + " height must be > 0");
  }

  const InspectionSurface& surf = ws.surface;
  if (!surf.empty()) {
    require(surf.points.size() >= 2, "inspection surface needs at least 2 points");
    for (const auto& p : surf.points) require(p.allFinite(), "inspection surface points must be finite");
    require(std::isfinite(surf.height) && surf.height > 0.0, "inspection surface height must be > 0");
  }

  const SafetyConstraints& s = sc.safety;
  require(std::isfinite(s.uav_radius) && s.uav_radius > 0.0, "r_Q must be > 0");
  require(std::isfinite(s.comm_range) && s.comm_range > 2.0 * s.uav_radius, "d_com must exceed 2*r_Q");
  require(std::isfinite(s.standoff_min) && s.standoff_min > 0.0, "d_s_min must be > 0");
  require(std::isfinite(s.standoff_max) && s.standoff_max > s.standoff_min,
          "d_s_max must exceed d_s_min");
  require(std::isfinite(s.clearance_margin) && s.clearance_margin >= 0.0,
          "clearance_margin must be >= 0");

  const MissionSpec& m = sc.mission;
  require(finite(m.start) && finite(m.goal), "start and goal must be finite");
  require(m.start != m.goal, "start and goal must differ");
  require(std::isfinite(m.nominal_speed) && m.nominal_speed > 0.0, "nominal_speed must be > 0");
  Vector3 sum = Vector3::Zero();
  for (const auto& o : m.offsets) {
    require(o.allFinite(), "formation offsets must be finite");
    sum += o;
  }
  require(sum.norm() <= 1e-9, "formation offsets must sum to the zero vector");

  const ReconfigSettings& r = sc.reconfig;
  require(!r.shape_priority.empty(), "reconfig shape_priority must not be empty");
  for (auto k : r.shape_priority)
    require(k != ShapeKind::triangle, "reconfig shape_priority may not list 'triangle'");
  require(r.alignment_spacing > 0.0, "alignment_spacing must be > 0");
  require(std::isfinite(r.rotation_angle), "rotation_angle must be finite");
  require(r.shrink_scale > 0.0 && r.shrink_scale <= 1.0, "shrink_scale must lie in (0, 1]");
  require(r.lead_buffer >= 0.0 && r.lag_buffer >= 0.0, "lead/lag buffers must be >= 0");
  require(r.transform_spans > 0.0 && r.restore_spans > 0.0, "transform/restore spans must be > 0");
  require(!r.transformation_distance || *r.transformation_distance > 0.0,
          "transformation_distance must be > 0");
  require(!r.reconfiguration_distance || *r.reconfiguration_distance > 0.0,
          "reconfiguration_distance must be > 0");
  require(r.neighborhood_radius > 0.0, "neighborhood_radius must be > 0");
  require(r.max_speed > 0.0, "max_speed must be > 0");
  require(r.heading_smoothing >= 0.0, "heading_smoothing must be >= 0");
  require(r.timestep > 0.0, "timestep must be > 0");
  require(r.inspection_range_extra >= 0.0, "inspection_range_extra must be >= 0");

  const PlannerSettings& p = sc.planner;
  require(p.swarm_size >= 2, "swarm_size must be >= 2");
  require(p.iterations >= 1, "iterations must be >= 1");
  require(p.waypoints >= 1, "waypoints must be >= 1");
  require(p.segments >= p.waypoints + 1, "segments must be >= waypoints + 1");
  require(p.inertia > 0.0 && p.inertia <= 1.0, "inertia must lie in (0, 1]");
  require(p.c1 > 0.0 && p.c2 > 0.0, "c1 and c2 must be > 0");
  require(p.beta1 >= 0.0 && p.beta2 >= 0.0 && p.beta3 >= 0.0 && p.beta_r >= 0.0,
          "cost weights must be >= 0");
  require(p.beta1 > 0.0 || p.beta2 > 0.0 || p.beta3 > 0.0, "at least one of beta1..beta3 must be > 0");
}

Scenario parse_scenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("parse error: ") + e.what());
  }
  if (!root.is_object()) fail("parse error: top level must be an object");

  Scenario sc;
  optional_field(root, "name", sc.name);

  const json& ws = section(root, "workspace");
  sc.workspace.x_min = number(ws, "x_min_m");
  sc.workspace.x_max = number(ws, "x_max_m");
  sc.workspace.y_min = number(ws, "y_min_m");
  sc.workspace.y_max = number(ws, "y_max_m");
  sc.workspace.z_min = number(ws, "z_min_m");
  sc.workspace.z_max = number(ws, "z_max_m");

  if (root.contains("obstacles")) {
    const json& obs = root.at("obstacles");
    if (!obs.is_array()) fail("'obstacles' must be an array");
    for (const auto& o : obs) {
      if (!o.is_object()) fail("obstacle entries must be objects");
      CylinderObstacle c;
      optional_field(o, "name", c.name);
      c.center = {number(o, "center_x_m"), number(o, "center_y_m")};
      c.radius = number(o, "radius_m");
      c.height = number(o, "height_m");
      sc.workspace.obstacles.push_back(std::move(c));
    }
  }

  if (root.contains("surface")) {
    const json& s = section(root, "surface");
    sc.workspace.surface.height = number(s, "height_m");
    if (!s.contains("points_m") || !s.at("points_m").is_array()) fail("surface needs a 'points_m' array");
    for (const auto& p : s.at("points_m")) sc.workspace.surface.points.push_back(point2(p, "surface points_m"));
  }

  const json& safety = section(root, "safety");
  sc.safety.uav_radius = number(safety, "uav_radius_m");
  sc.safety.comm_range = number(safety, "comm_range_m");
  sc.safety.standoff_min = number(safety, "standoff_min_m");
  sc.safety.standoff_max = number(safety, "standoff_max_m");
  optional_field(safety, "clearance_margin_m", sc.safety.clearance_margin);

  const json& m = section(root, "mission");
  sc.mission.start = point3(m, "start_m");
  sc.mission.goal = point3(m, "goal_m");
  sc.mission.nominal_speed = number(m, "nominal_speed_mps");
  if (m.contains("offsets_m")) {
    const json& offs = m.at("offsets_m");
    if (!offs.is_array() || offs.size() != 3) fail("offsets_m must list exactly 3 vectors");
    for (std::size_t n = 0; n < 3; ++n) {
      json wrapper = {{"v", offs[n]}};
      sc.mission.offsets[n] = point3(wrapper, "v");
    }
  }

  if (root.contains("reconfig")) parse_reconfig(section(root, "reconfig"), sc.reconfig);
  if (root.contains("planner")) parse_planner(section(root, "planner"), sc.planner);

  validate_scenario(sc);
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& sc) {
  json root;
  root["name"] = sc.name;
  const Workspace& ws = sc.workspace;
  root["workspace"] = {{"x_min_m", ws.x_min}, {"x_max_m", ws.x_max}, {"y_min_m", ws.y_min},
                       {"y_max_m", ws.y_max}, {"z_min_m", ws.z_min}, {"z_max_m", ws.z_max}};
  root["obstacles"] = json::array();
  for (const auto& o : ws.obstacles) {
    root["obstacles"].push_back({{"name", o.name},
                                 {"center_x_m", o.center.x()},
                                 {"center_y_m", o.center.y()},
                                 {"radius_m", o.radius},
                                 {"height_m", o.height}});
  }
  if (!ws.surface.empty()) {
    json pts = json::array();
    for (const auto& p : ws.surface.points) pts.push_back({p.x(), p.y()});
    root["surface"] = {{"height_m", ws.surface.height}, {"points_m", pts}};
  }
  const SafetyConstraints& s = sc.safety;
  root["safety"] = {{"uav_radius_m", s.uav_radius},
                    {"comm_range_m", s.comm_range},
                    {"standoff_min_m", s.standoff_min},
                    {"standoff_max_m", s.standoff_max},
                    {"clearance_margin_m", s.clearance_margin}};
  const MissionSpec& m = sc.mission;
  json offs = json::array();
  for (const auto& o : m.offsets) offs.push_back(to_json(o));
  root["mission"] = {{"start_m", to_json(m.start)},
                     {"goal_m", to_json(m.goal)},
                     {"nominal_speed_mps", m.nominal_speed},
                     {"offsets_m", offs}};

  const ReconfigSettings& r = sc.reconfig;
  json priority = json::array();
  for (auto k : r.shape_priority) priority.push_back(std::string(to_string(k)));
  json rj = {{"enabled", r.enabled},
             {"shape_priority", priority},
             {"alignment_axis", std::string(to_string(r.alignment_axis))},
             {"alignment_spacing_m", r.alignment_spacing},
             {"rotation_axis", std::string(to_string(r.rotation_axis))},
             {"rotation_angle_rad", r.rotation_angle},
             {"shrink_scale", r.shrink_scale},
             {"lead_buffer_m", r.lead_buffer},
             {"lag_buffer_m", r.lag_buffer},
             {"transform_spans", r.transform_spans},
             {"restore_spans", r.restore_spans},
             {"neighborhood_radius_m", r.neighborhood_radius},
             {"max_speed_mps", r.max_speed},
             {"heading_smoothing_m", r.heading_smoothing},
             {"timestep_s", r.timestep},
             {"inspection_range_extra_m", r.inspection_range_extra}};
  if (r.transformation_distance) rj["transformation_distance_m"] = *r.transformation_distance;
  if (r.reconfiguration_distance) rj["reconfiguration_distance_m"] = *r.reconfiguration_distance;
  root["reconfig"] = rj;

  const PlannerSettings& p = sc.planner;
  root["planner"] = {{"swarm_size", p.swarm_size}, {"iterations", p.iterations},
                     {"waypoints", p.waypoints},   {"segments", p.segments},
                     {"inertia", p.inertia},       {"c1", p.c1},
                     {"c2", p.c2},                 {"seed", p.seed},
                     {"beta1", p.beta1},           {"beta2", p.beta2},
                     {"beta3", p.beta3},           {"beta_r", p.beta_r},
                     {"seed_straight_line", p.seed_straight_line}};
  return root.dump(2) + "\n";
}

double distance_to_obstacle(const Point3& p, const CylinderObstacle& obstacle) {
  const double radial = std::max((horizontal(p) - obstacle.center).norm() - obstacle.radius, 0.0);
  double dz = 0.0;
  if (p.z() > obstacle.height) dz = p.z() - obstacle.height;
  else if (p.z() < 0.0) dz = -p.z();
  return dz == 0.0 ? radial : std::hypot(radial, dz);
}

double distance_to_surface(const Point3& p, std::span<const Point2> polyline) {
  if (polyline.size() < 2) throw ContractViolation("distance_to_surface needs at least 2 points");
  const Point2 q = horizontal(p);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i)
    best = std::min(best, point_segment_distance(q, polyline[i], polyline[i + 1]));
  return best;
}

double distance_to_surface(const Point3& p, const InspectionSurface& surface) {
  return distance_to_surface(p, std::span<const Point2>(surface.points));
}

}  // namespace formplan
