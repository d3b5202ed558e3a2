#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "roomkit/core/transform.hpp"
#include "roomkit/errors.hpp"

namespace roomkit {

/// Colored 3D point set. `colors` is either empty or parallel to `points`
/// with RGB components in [0, 1].
struct PointCloud {
  std::vector<Vec3> points;
  std::vector<Vec3> colors;

  size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool has_colors() const { return !colors.empty(); }

  void validate() const {
    if (has_colors() && colors.size() != points.size()) {
      throw InvalidArgument("color count does not match point count");
    }
    for (const Vec3& p : points) {
      if (!p.allFinite()) throw InvalidArgument("non-finite point coordinate");
    }
  }

  Vec3 centroid() const {
    if (empty()) throw EmptyCloud("centroid of empty cloud");
    Vec3 c = Vec3::Zero();
    for (const Vec3& p : points) c += p;
    return c / static_cast<double>(points.size());
  }

  PointCloud transformed(const RigidTransform& t) const {
    PointCloud out;
    out.points.reserve(points.size());
    for (const Vec3& p : points) out.points.push_back(t.apply(p));
    out.colors = colors;
    return out;
  }

  /// Extracts the points (and colors) at the given indices.
  PointCloud subset(const std::vector<size_t>& indices) const {
    PointCloud out;
    out.points.reserve(indices.size());
    if (has_colors()) out.colors.reserve(indices.size());
    for (size_t i : indices) {
      if (i >= points.size()) {
        throw IndexOutOfRange("subset index " + std::to_string(i) +
                              " out of range for cloud of size " +
                              std::to_string(points.size()));
      }
      out.points.push_back(points[i]);
      if (has_colors()) out.colors.push_back(colors[i]);
    }
    return out;
  }

  void append(const PointCloud& other) {
    const bool both_colored = has_colors() && other.has_colors();
    const bool was_empty = points.empty();
    points.insert(points.end(), other.points.begin(), other.points.end());
    if ((was_empty && other.has_colors()) || both_colored) {
      colors.insert(colors.end(), other.colors.begin(), other.colors.end());
    } else {
      colors.clear();
    }
  }
};

/// Axis-aligned bounds of a cloud (min corner, max corner).
inline std::pair<Vec3, Vec3> bounds(const PointCloud& cloud) {
  if (cloud.empty()) throw EmptyCloud("bounds of empty cloud");
  Vec3 lo = cloud.points.front();
  Vec3 hi = cloud.points.front();
  for (const Vec3& p : cloud.points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return {lo, hi};
}

}  // namespace roomkit
