#include "formplan/cost.hpp"

#include "formplan/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace formplan {

void CostWeights::validate() const {
  if (!(beta1 >= 0.0 && beta2 >= 0.0 && beta3 >= 0.0 && beta_r >= 0.0))
    throw ContractViolation("cost weights must be non-negative");
  if (!(beta1 > 0.0 || beta2 > 0.0 || beta3 > 0.0))
    throw ContractViolation("at least one of beta1..beta3 must be positive");
}

DiscretizedPath discretize(std::span<const Point3> control_points, int segments) {
  const Polyline line(control_points);
  const std::size_t spans = line.span_count();
  if (spans == 0) throw ContractViolation("discretize needs two distinct control points");
  if (segments < 0 || static_cast<std::size_t>(segments) < spans)
    throw ContractViolation("segment count " + std::to_string(segments) + " is below the " +
                            std::to_string(spans) + " control spans");

  const auto& v = line.vertices();
  const auto& cum = line.cumulative();
  const double total = line.length();
  const std::size_t spare = static_cast<std::size_t>(segments) - spans;

  // One segment per span, the rest by largest remainder.
  std::vector<std::size_t> count(spans, 1);
  std::vector<double> remainder(spans);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < spans; ++i) {
    const double share = static_cast<double>(spare) * (cum[i + 1] - cum[i]) / total;
    const auto whole = static_cast<std::size_t>(std::floor(share));
    count[i] += whole;
    assigned += whole;
    remainder[i] = share - static_cast<double>(whole);
  }
  std::vector<std::size_t> order(spans);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t r = 0; assigned < spare; ++r, ++assigned) ++count[order[r % spans]];

  DiscretizedPath out;
  out.nodes.reserve(static_cast<std::size_t>(segments) + 1);
  out.nodes.push_back(v.front());
  for (std::size_t i = 0; i < spans; ++i) {
    const double n = static_cast<double>(count[i]);
    for (std::size_t k = 1; k < count[i]; ++k)
      out.nodes.push_back(v[i] + (static_cast<double>(k) / n) * (v[i + 1] - v[i]));
    out.nodes.push_back(v[i + 1]);
  }
  out.midpoints.reserve(out.nodes.size() - 1);
  for (std::size_t l = 1; l < out.nodes.size(); ++l)
    out.midpoints.push_back(0.5 * (out.nodes[l - 1] + out.nodes[l]));
  return out;
}

double j1_length(const DiscretizedPath& d) {
  double sum = 0.0;
  for (std::size_t l = 1; l < d.nodes.size(); ++l) sum += (d.nodes[l] - d.nodes[l - 1]).norm();
  return sum;
}

double j2_violation(const DiscretizedPath& d, std::span<const CylinderObstacle> obstacles,
                    const SafeRadiusFn& safe_radius) {
  const std::size_t segments = d.segment_count();
  if (obstacles.empty() || segments == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t l = 0; l < segments; ++l) {
    const Point3& m = d.midpoints[l];
    for (std::size_t k = 0; k < obstacles.size(); ++k) {
      const double rs = safe_radius(l, k, m);
      sum += std::max(1.0 - distance_to_obstacle(m, obstacles[k]) / rs, 0.0);
    }
  }
  return sum / (static_cast<double>(segments) * static_cast<double>(obstacles.size()));
}

double j3_altitude(const DiscretizedPath& d, double z_min, double z_max) {
  double sum = 0.0;
  for (const auto& m : d.midpoints) {
    const double z = m.z();
    if (z <= 0.0) {
      sum += kGroundPenalty;
    } else if (z > z_max) {
      sum += z - z_max;
    } else if (z < z_min) {
      sum += z_min - z;
    }
  }
  return sum;
}

double jr_iwp_attraction(const DiscretizedPath& d, std::span<const Point2> iwps) {
  const std::size_t segments = d.segment_count();
  if (iwps.empty() || segments == 0) return 0.0;
  double sum = 0.0;
  for (const auto& m : d.midpoints)
    for (const auto& c : iwps) sum += std::hypot(m.x() - c.x(), m.y() - c.y());
  return sum / (static_cast<double>(segments) * static_cast<double>(iwps.size()));
}

CostBreakdown total_cost(std::span<const Point3> control_points, const CostModel& model) {
  const DiscretizedPath d = discretize(control_points, model.segments);
  CostBreakdown c;
  c.j1 = j1_length(d);
  c.j2 = j2_violation(d, model.obstacles, model.safe_radius);
  c.j3 = j3_altitude(d, model.z_min, model.z_max);
  c.jr = jr_iwp_attraction(d, model.iwps);
  const CostWeights& w = model.weights;
  c.total = w.beta1 * c.j1 + w.beta2 * c.j2 + w.beta3 * c.j3 + w.beta_r * c.jr;
  return c;
}

}  // namespace formplan
