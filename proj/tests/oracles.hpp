#pragma once

// Brute-force reference implementations used only by the tests. They are
// deliberately written differently from the library code: closest points by
// projection or dense sampling, sums by explicit double loops.

#include "formplan/geometry.hpp"
#include "formplan/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using formplan::CylinderObstacle;
using formplan::Point2;
using formplan::Point3;

// Closest point of the solid cylinder (z in [0, h]) by clamping, then distance.
inline double cylinder_distance(const Point3& p, const CylinderObstacle& c) {
  const double dx = p.x() - c.center.x();
  const double dy = p.y() - c.center.y();
  const double rho = std::sqrt(dx * dx + dy * dy);
  double qx = p.x(), qy = p.y();
  if (rho > c.radius) {
    qx = c.center.x() + dx * c.radius / rho;
    qy = c.center.y() + dy * c.radius / rho;
  }
  const double qz = std::clamp(p.z(), 0.0, c.height);
  const double ex = p.x() - qx, ey = p.y() - qy, ez = p.z() - qz;
  return std::sqrt(ex * ex + ey * ey + ez * ez);
}

// Minimum distance to points sampled on the cylinder's side wall and top cap.
inline double cylinder_distance_sampled(const Point3& p, const CylinderObstacle& c, int n = 400) {
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < n; ++a) {
    const double phi = 2.0 * std::numbers::pi * a / n;
    for (int k = 0; k <= n; ++k) {
      const double z = c.height * k / n;
      const Point3 s(c.center.x() + c.radius * std::cos(phi), c.center.y() + c.radius * std::sin(phi), z);
      best = std::min(best, (p - s).norm());
      const double r = c.radius * k / n;
      const Point3 cap(c.center.x() + r * std::cos(phi), c.center.y() + r * std::sin(phi), c.height);
      best = std::min(best, (p - cap).norm());
    }
  }
  return best;
}

// Distance to a polyline sampled every `step` metres, endpoints included.
inline double polyline_distance_sampled(const Point2& q, const std::vector<Point2>& pts, double step) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Point2 d = pts[i + 1] - pts[i];
    const int n = std::max(1, static_cast<int>(std::ceil(d.norm() / step)));
    for (int k = 0; k <= n; ++k) best = std::min(best, (q - (pts[i] + d * (double(k) / n))).norm());
  }
  return best;
}

inline std::vector<Point3> midpoints(const std::vector<Point3>& nodes) {
  std::vector<Point3> m;
  for (std::size_t l = 0; l + 1 < nodes.size(); ++l)
    m.emplace_back((nodes[l].x() + nodes[l + 1].x()) / 2, (nodes[l].y() + nodes[l + 1].y()) / 2,
                   (nodes[l].z() + nodes[l + 1].z()) / 2);
  return m;
}

inline double j1(const std::vector<Point3>& nodes) {
  double s = 0;
  for (std::size_t l = 0; l + 1 < nodes.size(); ++l) {
    const double dx = nodes[l + 1].x() - nodes[l].x();
    const double dy = nodes[l + 1].y() - nodes[l].y();
    const double dz = nodes[l + 1].z() - nodes[l].z();
    s += std::sqrt(dx * dx + dy * dy + dz * dz);
  }
  return s;
}

template <class SafeRadius>
double j2(const std::vector<Point3>& nodes, const std::vector<CylinderObstacle>& obs, SafeRadius rs) {
  const auto m = midpoints(nodes);
  if (obs.empty()) return 0.0;
  double s = 0;
  for (std::size_t k = 0; k < obs.size(); ++k)
    for (std::size_t l = 0; l < m.size(); ++l) {
      const double v = 1.0 - cylinder_distance(m[l], obs[k]) / rs(l, k, m[l]);
      if (v > 0) s += v;
    }
  return s / (double(m.size()) * double(obs.size()));
}

inline double j3(const std::vector<Point3>& nodes, double zmin, double zmax, double ground) {
  double s = 0;
  for (const auto& p : midpoints(nodes)) {
    if (p.z() <= 0) s += ground;
    else if (p.z() < zmin) s += zmin - p.z();
    else if (p.z() > zmax) s += p.z() - zmax;
  }
  return s;
}

inline double jr(const std::vector<Point3>& nodes, const std::vector<Point2>& iwps) {
  if (iwps.empty()) return 0.0;
  const auto m = midpoints(nodes);
  double s = 0;
  for (const auto& c : iwps)
    for (const auto& p : m) s += std::sqrt((p.x() - c.x()) * (p.x() - c.x()) + (p.y() - c.y()) * (p.y() - c.y()));
  return s / (double(m.size()) * double(iwps.size()));
}

// Pairwise distance matrix as plain numbers.
inline std::array<std::array<double, 3>, 3> distance_matrix(const std::array<Point3, 3>& p) {
  std::array<std::array<double, 3>, 3> d{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) d[a][b] = (p[a] - p[b]).norm();
  return d;
}

inline double relative_error(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return a == b ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace oracle
