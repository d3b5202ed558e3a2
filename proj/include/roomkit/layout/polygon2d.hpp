#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "roomkit/core/transform.hpp"
#include "roomkit/errors.hpp"

namespace roomkit {

/// Counter-clockwise convex hull (Andrew's monotone chain). Strictly convex
/// turns only, so collinear boundary points and interior points are
/// dropped. The first vertex is the lexicographically smallest input point
/// (by x, then y). Throws DegenerateCloud for fewer than 3 distinct
/// non-collinear points.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) {
                          return a.x() == b.x() && a.y() == b.y();
                        }),
            pts.end());
  const size_t n = pts.size();
  if (n < 3) throw DegenerateCloud("convex_hull: fewer than 3 distinct points");

  auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) -
           (a.y() - o.y()) * (b.x() - o.x());
  };

  std::vector<Vec2> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {  // lower hull
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (size_t i = n - 1, lower = k + 1; i-- > 0;) {  // upper hull
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);  // last point equals the first
  if (hull.size() < 3) {
    throw DegenerateCloud("convex_hull: points are collinear");
  }
  return hull;
}

/// Signed shoelace area; positive for counter-clockwise polygons.
inline double polygon_area(const std::vector<Vec2>& poly) {
  double acc = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    acc += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * acc;
}

/// Containment test for a CCW convex polygon; boundary points count as
/// inside (within tol).
inline bool point_in_convex_polygon(const Vec2& p,
                                    const std::vector<Vec2>& poly,
                                    double tol = 0.0) {
  for (size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    const double cross = (b.x() - a.x()) * (p.y() - a.y()) -
                         (b.y() - a.y()) * (p.x() - a.x());
    if (cross < -tol) return false;
  }
  return true;
}

inline Vec2 closest_point_on_segment(const Vec2& p, const Vec2& a,
                                     const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 <= 0.0) return a;
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

inline Vec2 closest_point_on_polygon_boundary(const Vec2& p,
                                              const std::vector<Vec2>& poly) {
  Vec2 best = poly.front();
  double best_d2 = (p - best).squaredNorm();
  for (size_t i = 0; i < poly.size(); ++i) {
    const Vec2 q = closest_point_on_segment(p, poly[i],
                                            poly[(i + 1) % poly.size()]);
    const double d2 = (p - q).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = q;
    }
  }
  return best;
}

/// Distance from p to the polygon, 0 when p lies inside or on the boundary.
inline double distance_outside_polygon(const Vec2& p,
                                       const std::vector<Vec2>& poly) {
  if (point_in_convex_polygon(p, poly)) return 0.0;
  return (p - closest_point_on_polygon_boundary(p, poly)).norm();
}

}  // namespace roomkit
