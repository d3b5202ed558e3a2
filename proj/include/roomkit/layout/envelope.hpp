#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "roomkit/core/pca.hpp"
#include "roomkit/core/point_cloud.hpp"
#include "roomkit/io/labels.hpp"
#include "roomkit/layout/polygon2d.hpp"

namespace roomkit {

/// Planar floor frame with its 2D contour. f1/f2 span the plane (largest
/// principal directions of the floor points), fn = f1 x f2 points toward
/// the room interior.
struct FloorModel {
  Vec3 origin = Vec3::Zero();
  Vec3 f1 = Vec3::UnitX();
  Vec3 f2 = Vec3::UnitY();
  Vec3 fn = Vec3::UnitZ();
  std::vector<Vec2> contour;  // CCW in (f1, f2) coordinates
  double area = 0.0;
  Vec2 dims = Vec2::Zero();  // contour bounds along (f1, f2)

  Vec2 to_plane(const Vec3& p) const {
    const Vec3 d = p - origin;
    return {d.dot(f1), d.dot(f2)};
  }
  Vec3 to_world(const Vec2& uv) const {
    return origin + uv.x() * f1 + uv.y() * f2;
  }
  /// Signed height above the floor plane.
  double height_of(const Vec3& p) const { return (p - origin).dot(fn); }
};

struct RoomEnvelope {
  FloorModel floor;
  double height = 0.0;
  double volume = 0.0;
};

/// 2D convex hull of the points projected into the floor frame, CCW with
/// the lexicographically smallest vertex first.
inline std::vector<Vec2> floor_contour(const FloorModel& floor,
                                       const PointCloud& points) {
  std::vector<Vec2> projected;
  projected.reserve(points.size());
  for (const Vec3& p : points.points) projected.push_back(floor.to_plane(p));
  return convex_hull(std::move(projected));
}

/// Fits the floor plane frame to segmented floor points. The normal is
/// oriented so `reference_points` (the rest of the scene) lie on its
/// positive side; without a reference the majority side of the floor
/// points' own residuals is used.
inline FloorModel fit_floor(const PointCloud& floor_points,
                            const PointCloud* reference_points = nullptr) {
  const PrincipalAxes pca = compute_pca(floor_points);
  if (pca.eigenvalues[1] <= pca.eigenvalues[0] * 1e-9) {
    throw DegenerateCloud("fit_floor: floor points are collinear");
  }

  FloorModel floor;
  floor.origin = pca.centroid;
  floor.f1 = pca.axes[0];
  floor.f2 = pca.axes[1];
  floor.fn = floor.f1.cross(floor.f2);

  bool flip = false;
  if (reference_points != nullptr && !reference_points->empty()) {
    double mean_h = 0.0;
    for (const Vec3& p : reference_points->points) {
      mean_h += floor.height_of(p);
    }
    flip = mean_h < 0.0;
  } else {
    size_t above = 0, below = 0;
    for (const Vec3& p : floor_points.points) {
      const double h = floor.height_of(p);
      if (h > 0) ++above;
      if (h < 0) ++below;
    }
    flip = above < below;
  }
  if (flip) {
    floor.f2 = -floor.f2;
    floor.fn = -floor.fn;
  }

  floor.contour = floor_contour(floor, floor_points);
  floor.area = polygon_area(floor.contour);
  Vec2 lo = floor.contour.front(), hi = floor.contour.front();
  for (const Vec2& v : floor.contour) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  floor.dims = hi - lo;
  return floor;
}

struct HeightEstimate {
  double height = 0.0;
  size_t clamped_below_floor = 0;  // points whose height was raised to 0
};

/// Wall heights above the floor plane, negatives clamped to 0, reduced by
/// the nearest-rank percentile (default 95%): ascending sort, element at
/// 0-based index ceil(p*n) clamped to the last element.
inline HeightEstimate room_height_detailed(const PointCloud& wall_points,
                                           const FloorModel& floor,
                                           double percentile = 0.95) {
  if (wall_points.empty()) throw EmptyCloud("room_height: no wall points");
  if (!(percentile > 0.0 && percentile <= 1.0)) {
    throw InvalidArgument("room_height: percentile must be in (0, 1]");
  }
  HeightEstimate est;
  std::vector<double> heights;
  heights.reserve(wall_points.size());
  for (const Vec3& p : wall_points.points) {
    double h = floor.height_of(p);
    if (h < 0.0) {
      h = 0.0;
      ++est.clamped_below_floor;
    }
    heights.push_back(h);
  }
  std::sort(heights.begin(), heights.end());
  const size_t n = heights.size();
  const size_t rank = static_cast<size_t>(
      std::ceil(percentile * static_cast<double>(n)));
  est.height = heights[std::min(rank, n - 1)];
  return est;
}

inline double room_height(const PointCloud& wall_points,
                          const FloorModel& floor,
                          double percentile = 0.95) {
  return room_height_detailed(wall_points, floor, percentile).height;
}

/// Fits the full envelope from a segmented scene: all floor instances feed
/// the plane fit, all wall instances feed the height percentile, and
/// volume = area * height.
inline RoomEnvelope build_envelope(const SegmentedScene& scene) {
  const PointCloud floor_cloud = scene.category_cloud(kFloorCategory);
  if (floor_cloud.empty()) {
    throw MissingCategory("build_envelope: scene has no 'floor' instance");
  }
  const PointCloud wall_cloud = scene.category_cloud(kWallCategory);
  if (wall_cloud.empty()) {
    throw MissingCategory("build_envelope: scene has no 'wall' instance");
  }
  const PointCloud reference = scene.complement_cloud(kFloorCategory);

  RoomEnvelope env;
  env.floor = fit_floor(floor_cloud, reference.empty() ? nullptr : &reference);
  const HeightEstimate est = room_height_detailed(wall_cloud, env.floor);
  if (est.clamped_below_floor > 0) {
    warn("build_envelope: clamped " +
         std::to_string(est.clamped_below_floor) +
         " wall height(s) below the floor plane to 0");
  }
  env.height = est.height;
  env.volume = env.floor.area * env.height;
  return env;
}

}  // namespace roomkit
