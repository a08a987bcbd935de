#pragma once

#include "formplan/pipeline.hpp"
#include "formplan/trajectory.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace formplan {

/// Whitespace-separated columns "t_s x_m y_m z_m v_mps" after a '#' header line.
void write_trajectory(std::ostream& out, const TrajectoryCommand& command);
TrajectoryCommand read_trajectory(std::istream& in);
TrajectoryCommand read_trajectory_file(const std::filesystem::path& path);

/// One row per recorded iteration: iteration, best total, j1, j2, j3, jr.
void write_convergence(std::ostream& out, const PsoResult& result);

/// Machine-readable summary of a planning run.
std::string plan_report_json(const Scenario& scenario, const PlanResult& result);

std::string validation_report_json(const ValidationReport& report);

/// Writes uav1.txt .. uav3.txt, convergence.txt and report.json into `dir`,
/// creating it when needed.
void write_outputs(const std::filesystem::path& dir, const Scenario& scenario, const PlanResult& result);

}  // namespace formplan
