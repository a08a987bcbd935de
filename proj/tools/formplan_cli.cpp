#include "formplan/errors.hpp"
#include "formplan/iwp.hpp"
#include "formplan/pipeline.hpp"
#include "formplan/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kScenario = 2,
  kInfeasible = 3,
  kSchedule = 4,
  kViolations = 5,
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> swarm_size, iterations, waypoints, segments;
  std::optional<double> beta1, beta2, beta3, beta_r;
};

void apply(const Overrides& o, formplan::PlannerSettings& p) {
  if (o.seed) p.seed = *o.seed;
  if (o.swarm_size) p.swarm_size = *o.swarm_size;
  if (o.iterations) p.iterations = *o.iterations;
  if (o.waypoints) p.waypoints = *o.waypoints;
  if (o.segments) p.segments = *o.segments;
  if (o.beta1) p.beta1 = *o.beta1;
  if (o.beta2) p.beta2 = *o.beta2;
  if (o.beta3) p.beta3 = *o.beta3;
  if (o.beta_r) p.beta_r = *o.beta_r;
}

void add_planner_options(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--seed", o.seed, "RNG seed");
  cmd.add_option("--swarm-size", o.swarm_size, "Particles in the swarm")->check(CLI::PositiveNumber);
  cmd.add_option("--iterations", o.iterations, "Swarm iterations")->check(CLI::NonNegativeNumber);
  cmd.add_option("--waypoints", o.waypoints, "Interior waypoints per path")->check(CLI::PositiveNumber);
  cmd.add_option("--segments", o.segments, "Cost discretisation segments")->check(CLI::PositiveNumber);
  cmd.add_option("--beta1", o.beta1, "Path length weight");
  cmd.add_option("--beta2", o.beta2, "Obstacle weight");
  cmd.add_option("--beta3", o.beta3, "Altitude weight");
  cmd.add_option("--beta-r", o.beta_r, "IWP attraction weight");
}

std::filesystem::path default_out_dir() {
  if (const char* env = std::getenv("FORMPLAN_OUT_DIR"); env && *env) return env;
  return "formplan_out";
}

int run_plan(const std::string& scenario_path, const Overrides& o, bool no_reconfig,
             const std::filesystem::path& out_dir) {
  formplan::Scenario scenario = formplan::load_scenario(scenario_path);
  apply(o, scenario.planner);
  formplan::validate_scenario(scenario);

  const formplan::PlanResult result = formplan::plan_mission(scenario, !no_reconfig);
  formplan::write_outputs(out_dir, scenario, result);

  const auto& cost = result.optimization.path.cost;
  std::cout << "cost " << cost.total << " (J1 " << cost.j1 << ", J2 " << cost.j2 << ", J3 " << cost.j3 << ", JR "
            << cost.jr << ")\n";
  std::cout << result.iwps.size() << " IWP(s), " << result.plans.size() << " reconfiguration(s)\n";
  for (const auto& p : result.plans) {
    std::cout << "  IWP " << p.iwp << " " << formplan::to_string(p.shape.kind) << " t1=" << p.t1 << " t2=" << p.t2
              << " t3=" << p.t3 << " t4=" << p.t4 << "\n";
  }
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& v : result.validation.violations) std::cerr << "violation: " << v.describe() << "\n";
  std::cout << "outputs written to " << out_dir.string() << "\n";
  return result.validation.ok() ? kOk : kViolations;
}

int run_validate(const std::string& scenario_path, const std::filesystem::path& dir) {
  const formplan::Scenario scenario = formplan::load_scenario(scenario_path);
  formplan::CommandSet commands;
  for (std::size_t n = 0; n < 3; ++n)
    commands[n] = formplan::read_trajectory_file(dir / ("uav" + std::to_string(n + 1) + ".txt"));
  if (commands[0].time.empty()) throw formplan::ScenarioError("trajectory files are empty");
  for (const auto& c : commands)
    if (c.time != commands[0].time) throw formplan::ScenarioError("trajectory files do not share one timeline");

  const formplan::ValidationReport report = formplan::validate(commands, scenario);
  std::cout << formplan::validation_report_json(report);
  return report.ok() ? kOk : kViolations;
}

int run_inspect(const std::string& scenario_path) {
  const formplan::Scenario scenario = formplan::load_scenario(scenario_path);
  const auto iwps = formplan::plan_iwps(scenario);
  nlohmann::json out = nlohmann::json::array();
  for (const auto& w : iwps) {
    nlohmann::json feasible = nlohmann::json::array();
    for (const auto& s : w.iwp.feasible) feasible.push_back(formplan::to_string(s.kind));
    out.push_back({{"index", w.index},
                   {"obstacles", {w.iwp.p, w.iwp.q}},
                   {"position_m", {w.iwp.position.x(), w.iwp.position.y()}},
                   {"gap_width_m", w.iwp.gap_width},
                   {"feasible", feasible},
                   {"chosen", formplan::to_string(w.shape.kind)}});
  }
  std::cout << out.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconfigurable three-UAV formation path planner"};
  app.require_subcommand(1);

  std::string scenario_path;
  Overrides overrides;
  bool no_reconfig = false;
  std::string out_dir = default_out_dir().string();

  auto* plan = app.add_subcommand("plan", "Plan a mission and write trajectories");
  plan->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  add_planner_options(*plan, overrides);
  plan->add_flag("--no-reconfig", no_reconfig, "Fly the rigid formation throughout");
  plan->add_option("--out", out_dir, "Output directory (default $FORMPLAN_OUT_DIR or ./formplan_out)");

  std::string traj_dir;
  auto* val = app.add_subcommand("validate", "Check trajectory files against a scenario");
  val->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  val->add_option("--trajectories", traj_dir, "Directory holding uav1.txt .. uav3.txt")->required();

  auto* inspect = app.add_subcommand("inspect-iwps", "List detected intermediate waypoints");
  inspect->add_option("--scenario", scenario_path, "Scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*plan) return run_plan(scenario_path, overrides, no_reconfig, out_dir);
    if (*val) return run_validate(scenario_path, traj_dir);
    return run_inspect(scenario_path);
  } catch (const formplan::ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return kScenario;
  } catch (const formplan::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const formplan::ScheduleError& e) {
    std::cerr << "schedule conflict: " << e.what() << "\n";
    return kSchedule;
  } catch (const formplan::ContractViolation& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kScenario;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
