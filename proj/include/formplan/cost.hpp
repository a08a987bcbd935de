#pragma once

#include "formplan/geometry.hpp"
#include "formplan/scenario.hpp"

#include <functional>
#include <span>
#include <vector>

namespace formplan {

/// Finite stand-in for an infinite altitude penalty (midpoint at or below ground).
inline constexpr double kGroundPenalty = 1.0e9;

struct CostWeights {
  double beta1 = 1.0;   // path length
  double beta2 = 1.0e4; // obstacle violation
  double beta3 = 10.0;  // altitude band
  double beta_r = 1.0;  // IWP attraction

  void validate() const;
};

struct CostBreakdown {
  double total = 0.0;
  double j1 = 0.0;
  double j2 = 0.0;
  double j3 = 0.0;
  double jr = 0.0;

  bool operator==(const CostBreakdown&) const = default;
};

/// Path resampled into straight segments.
struct DiscretizedPath {
  std::vector<Point3> nodes;      // L + 1 nodes
  std::vector<Point3> midpoints;  // L midpoints

  [[nodiscard]] std::size_t segment_count() const { return midpoints.size(); }
};

/// Resamples the control polyline into `segments` straight pieces.
///
/// Every control vertex is kept as a node; segments are shared out between
/// spans in proportion to span length (at least one per span), so the total
/// length is preserved and segment lengths are near-equal. Consecutive
/// duplicate control points are merged first. Throws ContractViolation if
/// `segments` is smaller than the number of spans.
DiscretizedPath discretize(std::span<const Point3> control_points, int segments);

double j1_length(const DiscretizedPath& d);

/// Required clearance for segment l against obstacle k, given the segment midpoint.
using SafeRadiusFn = std::function<double(std::size_t segment, std::size_t obstacle, const Point3& midpoint)>;

/// Mean over segments and obstacles of max(1 - d/r_S, 0); 0 when there are no obstacles.
double j2_violation(const DiscretizedPath& d, std::span<const CylinderObstacle> obstacles,
                    const SafeRadiusFn& safe_radius);

double j3_altitude(const DiscretizedPath& d, double z_min, double z_max);

/// Mean horizontal distance between segment midpoints and intermediate waypoints.
double jr_iwp_attraction(const DiscretizedPath& d, std::span<const Point2> iwps);

/// Everything `total_cost` needs beyond the path itself.
struct CostModel {
  std::vector<CylinderObstacle> obstacles;
  SafeRadiusFn safe_radius;
  double z_min = 0.0;
  double z_max = 0.0;
  std::vector<Point2> iwps;
  CostWeights weights;
  int segments = 100;
};

CostBreakdown total_cost(std::span<const Point3> control_points, const CostModel& model);

}  // namespace formplan
