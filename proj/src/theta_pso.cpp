#include "formplan/theta_pso.hpp"

#include "formplan/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace formplan {

namespace {

double clamp_angle(double a) { return std::clamp(a, -kHalfPi, kHalfPi); }

const AxisRange& range_for(const PathProblem& problem, std::size_t dim) {
  switch (dim % 3) {
    case 0: return problem.x;
    case 1: return problem.y;
    default: return problem.z;
  }
}

std::mt19937_64 particle_stream(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), 0x7e7a5eedU};
  return std::mt19937_64(seq);
}

}  // namespace

void PsoParams::validate() const {
  if (swarm_size < 2) throw ContractViolation("swarm_size must be >= 2");
  if (waypoints < 1) throw ContractViolation("waypoints must be >= 1");
  if (iterations < 1) throw ContractViolation("iterations must be >= 1");
  if (!(inertia > 0.0 && inertia <= 1.0)) throw ContractViolation("inertia must lie in (0, 1]");
  if (!(c1 > 0.0 && c2 > 0.0)) throw ContractViolation("c1 and c2 must be positive");
}

double decode(double theta, const AxisRange& range) {
  if (!(theta >= -kHalfPi && theta <= kHalfPi))
    throw ContractViolation("phase angle " + std::to_string(theta) + " outside [-pi/2, pi/2]");
  const double s = std::sin(theta);
  // The sine saturates at the box edges; return the bounds exactly there.
  if (s >= 1.0) return range.max;
  if (s <= -1.0) return range.min;
  const double x = 0.5 * ((range.max - range.min) * s + range.max + range.min);
  return std::clamp(x, range.min, range.max);
}

double encode(double x, const AxisRange& range) {
  x = std::clamp(x, range.min, range.max);
  const double s = (2.0 * x - range.max - range.min) / (range.max - range.min);
  return std::asin(std::clamp(s, -1.0, 1.0));
}

void step(Particle& p, std::span<const double> global_best, const PsoParams& params, double r1,
          double r2) {
  const std::size_t dims = p.theta.size();
  for (std::size_t j = 0; j < dims; ++j) {
    const double dt = params.inertia * p.delta_theta[j] + params.c1 * r1 * (p.best_theta[j] - p.theta[j]) +
                      params.c2 * r2 * (global_best[j] - p.theta[j]);
    p.delta_theta[j] = clamp_angle(dt);
    p.theta[j] = clamp_angle(p.theta[j] + p.delta_theta[j]);
  }
}

void step(Particle& p, std::span<const double> global_best, const PsoParams& params,
          std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r1 = unit(rng);
  const double r2 = unit(rng);
  step(p, global_best, params, r1, r2);
}

std::vector<Point3> decode_path(std::span<const double> theta, const PathProblem& problem) {
  const std::size_t w = theta.size() / 3;
  std::vector<Point3> path;
  path.reserve(w + 2);
  path.push_back(problem.start);
  for (std::size_t i = 0; i < w; ++i) {
    path.emplace_back(decode(theta[3 * i], problem.x), decode(theta[3 * i + 1], problem.y),
                      decode(theta[3 * i + 2], problem.z));
  }
  path.push_back(problem.goal);
  return path;
}

PsoResult optimize(const PathProblem& problem, const PathCostFn& cost, const PsoParams& params) {
  params.validate();
  const auto n = static_cast<std::size_t>(params.swarm_size);
  const auto dims = static_cast<std::size_t>(params.dimensions());

  std::vector<std::mt19937_64> streams;
  streams.reserve(n);
  for (std::size_t i = 0; i < n; ++i) streams.push_back(particle_stream(params.seed, i));

  Swarm swarm;
  swarm.particles.resize(n);
  std::vector<CostBreakdown> personal(n);
  std::uniform_real_distribution<double> angle(-kHalfPi, kHalfPi);

  for (std::size_t i = 0; i < n; ++i) {
    Particle& p = swarm.particles[i];
    p.theta.resize(dims);
    p.delta_theta.assign(dims, 0.0);
    if (i == 0 && params.seed_straight_line) {
      const auto w = static_cast<std::size_t>(params.waypoints);
      for (std::size_t k = 0; k < w; ++k) {
        const double u = static_cast<double>(k + 1) / static_cast<double>(w + 1);
        const Point3 q = problem.start + u * (problem.goal - problem.start);
        for (std::size_t a = 0; a < 3; ++a) p.theta[3 * k + a] = encode(q[a], range_for(problem, a));
      }
    } else {
      for (auto& t : p.theta) t = angle(streams[i]);
    }
    p.best_theta = p.theta;
    personal[i] = cost(decode_path(p.theta, problem));
    p.best_cost = personal[i].total;
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (swarm.particles[i].best_cost < swarm.particles[best].best_cost) best = i;
  swarm.global_best_theta = swarm.particles[best].best_theta;
  swarm.global_best_cost = swarm.particles[best].best_cost;
  CostBreakdown global_breakdown = personal[best];

  PsoResult result;
  result.convergence.reserve(static_cast<std::size_t>(params.iterations) + 1);
  result.convergence.push_back({0, global_breakdown});

  std::vector<CostBreakdown> current(n);
  for (int k = 1; k <= params.iterations; ++k) {
    swarm.iteration = k;
    // Synchronous update: every particle steps against the same global best,
    // and each draws only from its own stream, so evaluation order is irrelevant.
    for (std::size_t i = 0; i < n; ++i) {
      step(swarm.particles[i], swarm.global_best_theta, params, streams[i]);
      current[i] = cost(decode_path(swarm.particles[i].theta, problem));
    }
    for (std::size_t i = 0; i < n; ++i) {
      Particle& p = swarm.particles[i];
      if (current[i].total < p.best_cost) {
        p.best_cost = current[i].total;
        p.best_theta = p.theta;
        personal[i] = current[i];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Particle& p = swarm.particles[i];
      if (p.best_cost < swarm.global_best_cost) {
        swarm.global_best_cost = p.best_cost;
        swarm.global_best_theta = p.best_theta;
        global_breakdown = personal[i];
      }
    }
    result.convergence.push_back({k, global_breakdown});
  }

  result.path.waypoints = decode_path(swarm.global_best_theta, problem);
  result.path.cost = global_breakdown;
  return result;
}

PathProblem make_path_problem(const Scenario& scenario, const AxisRange& centroid_altitude) {
  const Workspace& ws = scenario.workspace;
  const MissionSpec& m = scenario.mission;
  if (!(centroid_altitude.max > centroid_altitude.min))
    throw InfeasibleError("centroid altitude band is empty once formation shapes are accounted for");

  auto check = [&](const Point3& p, const char* what) {
    if (p.x() < ws.x_min || p.x() > ws.x_max || p.y() < ws.y_min || p.y() > ws.y_max)
      throw InfeasibleError(std::string(what) + " lies outside the workspace bounds");
    if (p.z() <= 0.0) throw InfeasibleError(std::string(what) + " is at or below ground level");
    for (std::size_t k = 0; k < ws.obstacles.size(); ++k) {
      if (distance_to_obstacle(p, ws.obstacles[k]) <= 0.0)
        throw InfeasibleError(std::string(what) + " lies inside obstacle " + std::to_string(k) +
                              (ws.obstacles[k].name.empty() ? "" : " (" + ws.obstacles[k].name + ")"));
    }
  };
  check(m.start, "start");
  check(m.goal, "goal");

  PathProblem problem;
  problem.start = m.start;
  problem.goal = m.goal;
  problem.x = {ws.x_min, ws.x_max};
  problem.y = {ws.y_min, ws.y_max};
  problem.z = centroid_altitude;
  return problem;
}

}  // namespace formplan
