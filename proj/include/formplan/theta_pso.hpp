#pragma once

#include "formplan/cost.hpp"
#include "formplan/geometry.hpp"
#include "formplan/scenario.hpp"

#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace formplan {

// Angle-encoded particle swarm optimisation over formation-centroid paths.
//
// Each particle is a vector of phase angles in [-pi/2, pi/2]; dimension j is
// mapped onto its search interval through a sine, so the angle box is the
// only constraint the swarm dynamics ever need to enforce. Dimensions are
// interleaved (x1, y1, z1, ..., xW, yW, zW) for W interior waypoints.

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

struct PsoParams {
  int swarm_size = 100;
  int waypoints = 7;
  int iterations = 150;
  double inertia = 0.7;
  double c1 = 1.5;
  double c2 = 1.5;
  std::uint64_t seed = 1;
  /// Replace particle 0 with the straight start-goal line.
  bool seed_straight_line = true;

  [[nodiscard]] int dimensions() const { return 3 * waypoints; }
  void validate() const;
};

struct AxisRange {
  double min = 0.0;
  double max = 1.0;
};

/// One range per particle dimension.
using AxisBounds = std::vector<AxisRange>;

struct Particle {
  std::vector<double> theta;
  std::vector<double> delta_theta;
  std::vector<double> best_theta;
  double best_cost = 0.0;
};

struct Swarm {
  std::vector<Particle> particles;
  std::vector<double> global_best_theta;
  double global_best_cost = 0.0;
  int iteration = 0;
};

struct CandidatePath {
  /// Start, the interior waypoints, goal.
  std::vector<Point3> waypoints;
  CostBreakdown cost;
};

struct IterationRecord {
  int iteration = 0;
  CostBreakdown best;
};

struct PsoResult {
  CandidatePath path;
  /// Global best after initialisation (iteration 0) and after every iteration.
  std::vector<IterationRecord> convergence;
};

/// Cost of a full control polyline (start, interior waypoints, goal).
using PathCostFn = std::function<CostBreakdown(std::span<const Point3>)>;

/// Sine map from a phase angle onto [range.min, range.max].
/// Throws ContractViolation when theta lies outside [-pi/2, pi/2].
double decode(double theta, const AxisRange& range);

/// Inverse of decode; values outside the range are clamped first.
double encode(double x, const AxisRange& range);

/// Velocity and position update with explicit random factors.
void step(Particle& particle, std::span<const double> global_best, const PsoParams& params,
          double r1, double r2);

/// Velocity and position update drawing r1, r2 ~ U(0, 1) from `rng`.
void step(Particle& particle, std::span<const double> global_best, const PsoParams& params,
          std::mt19937_64& rng);

struct PathProblem {
  Point3 start = Point3::Zero();
  Point3 goal = Point3::Zero();
  /// x, y and z ranges shared by every interior waypoint.
  AxisRange x, y, z;
};

/// Runs the swarm and returns the decoded global best.
PsoResult optimize(const PathProblem& problem, const PathCostFn& cost, const PsoParams& params);

/// Builds the search problem from the scenario (x/y from the workspace, z from
/// `centroid_altitude`) and rejects unusable setups with InfeasibleError.
PathProblem make_path_problem(const Scenario& scenario, const AxisRange& centroid_altitude);

/// Decodes a particle into the full control polyline.
std::vector<Point3> decode_path(std::span<const double> theta, const PathProblem& problem);

}  // namespace formplan
