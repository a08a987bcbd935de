#include "formplan/report.hpp"

#include "formplan/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace formplan {

namespace {

using nlohmann::json;

std::string format_row(double t, const Point3& p, double v) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.4f %.6f %.6f %.6f %.6f\n", t, p.x(), p.y(), p.z(), v);
  return buf;
}

json point(const Point3& p) { return json::array({p.x(), p.y(), p.z()}); }
json point(const Point2& p) { return json::array({p.x(), p.y()}); }

json offsets_json(const FormationOffsets& o) {
  json a = json::array();
  for (const auto& v : o) a.push_back(point(v));
  return a;
}

json cost_json(const CostBreakdown& c) {
  return {{"total", c.total}, {"j1", c.j1}, {"j2", c.j2}, {"j3", c.j3}, {"jr", c.jr}};
}

json shape_json(const ShapeSpec& s) {
  json j{{"kind", to_string(s.kind)}};
  switch (s.kind) {
    case ShapeKind::alignment:
      j["axis"] = to_string(s.alignment_axis);
      j["spacing_m"] = s.spacing;
      break;
    case ShapeKind::rotation:
      j["axis"] = to_string(s.rotation_axis);
      j["angle_rad"] = s.rotation_angle;
      break;
    case ShapeKind::shrink: j["scale"] = s.scale; break;
    case ShapeKind::triangle: break;
  }
  return j;
}

json violations_json(const ValidationReport& report) {
  json a = json::array();
  for (const auto& v : report.violations) {
    json j{{"kind", to_string(v.kind)}, {"time_s", v.time}, {"uavs", v.uavs}, {"value", v.value},
           {"limit", v.limit}};
    if (v.obstacle) j["obstacle"] = *v.obstacle;
    a.push_back(std::move(j));
  }
  return a;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

void write_trajectory(std::ostream& out, const TrajectoryCommand& command) {
  out << "# t_s x_m y_m z_m v_mps\n";
  for (std::size_t k = 0; k < command.time.size(); ++k)
    out << format_row(command.time[k], command.position[k], command.speed[k]);
}

TrajectoryCommand read_trajectory(std::istream& in) {
  TrajectoryCommand c;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    double t, x, y, z, v;
    if (!(row >> t >> x >> y >> z >> v)) throw ScenarioError("malformed trajectory row at line " + std::to_string(lineno));
    c.time.push_back(t);
    c.position.emplace_back(x, y, z);
    c.speed.push_back(v);
  }
  return c;
}

TrajectoryCommand read_trajectory_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open trajectory file " + path.string());
  return read_trajectory(in);
}

void write_convergence(std::ostream& out, const PsoResult& result) {
  out << "# iteration best j1 j2 j3 jr\n";
  char buf[200];
  for (const auto& r : result.convergence) {
    std::snprintf(buf, sizeof buf, "%d %.9g %.9g %.9g %.9g %.9g\n", r.iteration, r.best.total, r.best.j1, r.best.j2,
                  r.best.j3, r.best.jr);
    out << buf;
  }
}

std::string validation_report_json(const ValidationReport& report) {
  json j{{"ok", report.ok()}, {"violation_count", report.violations.size()}, {"violations", violations_json(report)}};
  return j.dump(2) + "\n";
}

std::string plan_report_json(const Scenario& scenario, const PlanResult& result) {
  json j;
  const auto& pl = scenario.planner;
  j["scenario"] = scenario.name;
  j["params"] = {{"seed", pl.seed},       {"swarm_size", pl.swarm_size}, {"iterations", pl.iterations},
                 {"waypoints", pl.waypoints}, {"segments", pl.segments}, {"inertia", pl.inertia},
                 {"c1", pl.c1},           {"c2", pl.c2},                 {"beta1", pl.beta1},
                 {"beta2", pl.beta2},     {"beta3", pl.beta3},           {"beta_r", pl.beta_r}};
  j["formation_radius_m"] = result.formation_radius;
  j["centroid_altitude_m"] = {result.centroid_altitude.min, result.centroid_altitude.max};
  j["cost"] = cost_json(result.optimization.path.cost);

  json wps = json::array();
  for (const auto& w : result.optimization.path.waypoints) wps.push_back(point(w));
  j["waypoints"] = wps;

  json iwps = json::array();
  for (const auto& w : result.iwps) {
    json f = json::array();
    for (const auto& s : w.iwp.feasible) f.push_back(to_string(s.kind));
    json e{{"index", w.index},
           {"obstacles", {w.iwp.p, w.iwp.q}},
           {"position_m", point(w.iwp.position)},
           {"gap_width_m", w.iwp.gap_width},
           {"feasible", f},
           {"shape", shape_json(w.shape)},
           {"target_offsets_m", offsets_json(w.target)},
           {"zone_radius_m", w.zone_radius},
           {"altitude_m", w.altitude},
           {"traversed", w.traversed()}};
    if (w.passage) e["passage_m"] = {w.passage->begin, w.passage->end};
    iwps.push_back(std::move(e));
  }
  j["iwps"] = iwps;

  json plans = json::array();
  for (const auto& p : result.plans) {
    json speeds = json::array();
    for (const auto& w : result.trajectory.windows) {
      if (w.iwp != p.iwp) continue;
      speeds.push_back({{"uav", w.uav + 1},
                        {"phase", w.phase == WindowPhase::transformation ? "transformation" : "reconfiguration"},
                        {"t_begin_s", w.t_begin},
                        {"t_end_s", w.t_end},
                        {"nominal_distance_m", w.nominal_distance},
                        {"transformed_distance_m", w.transformed_distance},
                        {"speed_mps", w.speed}});
    }
    plans.push_back({{"iwp", p.iwp},
                     {"shape", shape_json(p.shape)},
                     {"s_m", {p.s1, p.s2, p.s3, p.s4}},
                     {"t_s", {p.t1, p.t2, p.t3, p.t4}},
                     {"transformation_time_s", p.transformation_time()},
                     {"reconfiguration_time_s", p.reconfiguration_time()},
                     {"window_speeds", speeds}});
  }
  j["plans"] = plans;
  j["duration_s"] = result.trajectory.time.empty() ? 0.0 : result.trajectory.time.back();
  j["samples"] = result.trajectory.time.size();
  j["validation"] = {{"ok", result.validation.ok()}, {"violations", violations_json(result.validation)}};
  j["warnings"] = result.warnings;
  return j.dump(2) + "\n";
}

void write_outputs(const std::filesystem::path& dir, const Scenario& scenario, const PlanResult& result) {
  std::filesystem::create_directories(dir);
  for (std::size_t n = 0; n < 3; ++n) {
    std::ostringstream s;
    write_trajectory(s, result.trajectory.commands[n]);
    write_file(dir / ("uav" + std::to_string(n + 1) + ".txt"), s.str());
  }
  std::ostringstream conv;
  write_convergence(conv, result.optimization);
  write_file(dir / "convergence.txt", conv.str());
  write_file(dir / "report.json", plan_report_json(scenario, result));
}

}  // namespace formplan
