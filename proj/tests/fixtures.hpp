#pragma once

#include "formplan/scenario.hpp"

#include <string>

#ifndef FORMPLAN_SCENARIO_DIR
#error "FORMPLAN_SCENARIO_DIR must point at the scenarios directory"
#endif

namespace fixtures {

inline std::string scenario_path(const std::string& name) {
  return std::string(FORMPLAN_SCENARIO_DIR) + "/" + name + ".json";
}

inline formplan::Scenario load(const std::string& name) { return formplan::load_scenario(scenario_path(name)); }

// Small obstacle-free workspace around a straight flight along +x.
inline formplan::Scenario open_field() {
  formplan::Scenario s;
  s.name = "open_field";
  s.workspace = {-10, 110, -20, 20, 2, 15, {}, {}};
  s.mission.start = {0, 0, 10};
  s.mission.goal = {100, 0, 10};
  return s;
}

inline formplan::CylinderObstacle pier(double x, double y, double r, double h = 20.0) {
  formplan::CylinderObstacle c;
  c.center = {x, y};
  c.radius = r;
  c.height = h;
  return c;
}

}  // namespace fixtures
