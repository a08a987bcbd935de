#include "formplan/geometry.hpp"

#include <algorithm>
#include <limits>

namespace formplan {

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  const Point2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double u = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + u * ab)).norm();
}

Polyline::Polyline(std::span<const Point3> vertices) {
  vertices_.reserve(vertices.size());
  for (const auto& v : vertices) {
    if (!vertices_.empty() && v == vertices_.back()) continue;
    vertices_.push_back(v);
  }
  cumulative_.reserve(vertices_.size());
  double s = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i > 0) s += (vertices_[i] - vertices_[i - 1]).norm();
    cumulative_.push_back(s);
  }
}

std::size_t Polyline::span_index(double s) const {
  // Index i such that cumulative_[i] <= s < cumulative_[i+1], last span at the end.
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  const auto idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - cumulative_.begin() - 1, 0));
  return std::min(idx, span_count() - 1);
}

Point3 Polyline::point_at(double s) const {
  if (vertices_.size() == 1) return vertices_.front();
  s = std::clamp(s, 0.0, length());
  const std::size_t i = span_index(s);
  const double span = cumulative_[i + 1] - cumulative_[i];
  const double u = std::clamp((s - cumulative_[i]) / span, 0.0, 1.0);
  return vertices_[i] + u * (vertices_[i + 1] - vertices_[i]);
}

Vector3 Polyline::tangent_at(double s) const {
  if (vertices_.size() < 2) return Vector3::UnitX();
  const std::size_t i = span_index(std::clamp(s, 0.0, length()));
  return (vertices_[i + 1] - vertices_[i]).normalized();
}

double Polyline::closest_arclength_2d(const Point2& q) const {
  if (vertices_.size() < 2) return 0.0;
  double best_d = std::numeric_limits<double>::infinity();
  double best_s = 0.0;
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    const Point2 a = horizontal(vertices_[i]);
    const Point2 ab = horizontal(vertices_[i + 1]) - a;
    const double len2 = ab.squaredNorm();
    const double u = len2 > 0.0 ? std::clamp((q - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    const double d = (q - (a + u * ab)).norm();
    if (d < best_d) {
      best_d = d;
      best_s = cumulative_[i] + u * (cumulative_[i + 1] - cumulative_[i]);
    }
  }
  return best_s;
}

}  // namespace formplan
