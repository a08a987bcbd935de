#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace formplan {

// Local East-North-Up frame, meters.
using Point3 = Eigen::Vector3d;
using Point2 = Eigen::Vector2d;
using Vector3 = Eigen::Vector3d;

inline Point2 horizontal(const Point3& p) { return p.head<2>(); }

/// Shortest distance from `p` to the segment [a, b] in the plane.
double point_segment_distance(const Point2& p, const Point2& a, const Point2& b);

/// Piecewise-linear curve parameterised by arc length.
///
/// Consecutive duplicate vertices are dropped on construction so that every
/// stored span has positive length.
class Polyline {
 public:
  Polyline() = default;
  explicit Polyline(std::span<const Point3> vertices);

  [[nodiscard]] double length() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
  [[nodiscard]] const std::vector<Point3>& vertices() const { return vertices_; }
  [[nodiscard]] const std::vector<double>& cumulative() const { return cumulative_; }
  [[nodiscard]] std::size_t span_count() const {
    return vertices_.empty() ? 0 : vertices_.size() - 1;
  }

  /// Point at arc length `s`; `s` is clamped into [0, length()].
  [[nodiscard]] Point3 point_at(double s) const;

  /// Unit tangent of the span containing `s`.
  [[nodiscard]] Vector3 tangent_at(double s) const;

  /// Arc length of the point closest to `q` in the horizontal plane.
  [[nodiscard]] double closest_arclength_2d(const Point2& q) const;

 private:
  std::size_t span_index(double s) const;

  std::vector<Point3> vertices_;
  std::vector<double> cumulative_;
};

}  // namespace formplan
