#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "roomkit/core/point_cloud.hpp"

namespace roomkit {

/// Oriented bounding box: center, orthonormal axes, non-negative half
/// extents along each axis.
struct Obb {
  Vec3 center = Vec3::Zero();
  std::array<Vec3, 3> axes{Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
  Vec3 half_extents = Vec3::Zero();

  std::array<Vec3, 8> corners() const {
    std::array<Vec3, 8> out;
    int k = 0;
    for (int sx : {-1, 1}) {
      for (int sy : {-1, 1}) {
        for (int sz : {-1, 1}) {
          out[k++] = center + sx * half_extents.x() * axes[0] +
                     sy * half_extents.y() * axes[1] +
                     sz * half_extents.z() * axes[2];
        }
      }
    }
    return out;
  }

  bool is_valid(double tol = 1e-9) const {
    if (half_extents.minCoeff() < 0.0) return false;
    for (int i = 0; i < 3; ++i) {
      if (std::abs(axes[i].norm() - 1.0) > tol) return false;
      for (int j = i + 1; j < 3; ++j) {
        if (std::abs(axes[i].dot(axes[j])) > tol) return false;
      }
    }
    return true;
  }
};

/// Tight box around `points` with the prescribed (orthonormal) axes.
inline Obb obb_from_points(const std::vector<Vec3>& points,
                           const std::array<Vec3, 3>& axes) {
  if (points.empty()) throw EmptyCloud("obb_from_points: empty point set");
  Vec3 lo, hi;
  for (int i = 0; i < 3; ++i) {
    double mn = points.front().dot(axes[i]);
    double mx = mn;
    for (const Vec3& p : points) {
      const double s = p.dot(axes[i]);
      mn = std::min(mn, s);
      mx = std::max(mx, s);
    }
    lo[i] = mn;
    hi[i] = mx;
  }
  Obb box;
  box.axes = axes;
  box.half_extents = 0.5 * (hi - lo);
  box.center = Vec3::Zero();
  for (int i = 0; i < 3; ++i) box.center += 0.5 * (hi[i] + lo[i]) * axes[i];
  return box;
}

/// Separating-axis intersection test over the 15 candidate axes (3 face
/// normals each plus 9 edge-edge cross products). Touching boxes count as
/// overlapping.
inline bool obb_overlap(const Obb& a, const Obb& b) {
  const Vec3 t = b.center - a.center;

  const auto separated_on = [&](const Vec3& axis) {
    const double len2 = axis.squaredNorm();
    if (len2 < 1e-12) return false;  // degenerate cross product, skip
    double ra = 0.0, rb = 0.0;
    for (int i = 0; i < 3; ++i) {
      ra += a.half_extents[i] * std::abs(a.axes[i].dot(axis));
      rb += b.half_extents[i] * std::abs(b.axes[i].dot(axis));
    }
    return std::abs(t.dot(axis)) > ra + rb;
  };

  for (int i = 0; i < 3; ++i) {
    if (separated_on(a.axes[i])) return false;
    if (separated_on(b.axes[i])) return false;
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (separated_on(a.axes[i].cross(b.axes[j]))) return false;
    }
  }
  return true;
}

/// Smallest translation distance that would separate two overlapping
/// boxes, i.e. the minimum over the candidate axes of the projected
/// overlap. Returns 0 for non-overlapping boxes.
inline double obb_overlap_depth(const Obb& a, const Obb& b) {
  if (!obb_overlap(a, b)) return 0.0;
  const Vec3 t = b.center - a.center;
  double depth = std::numeric_limits<double>::infinity();
  const auto consider = [&](const Vec3& axis) {
    const double len = axis.norm();
    if (len < 1e-6) return;
    const Vec3 u = axis / len;
    double ra = 0.0, rb = 0.0;
    for (int i = 0; i < 3; ++i) {
      ra += a.half_extents[i] * std::abs(a.axes[i].dot(u));
      rb += b.half_extents[i] * std::abs(b.axes[i].dot(u));
    }
    depth = std::min(depth, ra + rb - std::abs(t.dot(u)));
  };
  for (int i = 0; i < 3; ++i) {
    consider(a.axes[i]);
    consider(b.axes[i]);
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) consider(a.axes[i].cross(b.axes[j]));
  }
  return std::max(0.0, depth);
}

}  // namespace roomkit
