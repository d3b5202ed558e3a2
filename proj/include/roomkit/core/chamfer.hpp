#pragma once

#include <cmath>

#include "roomkit/core/nn_index.hpp"
#include "roomkit/core/point_cloud.hpp"

namespace roomkit {

/// Variant selection for the chamfer metric. The default (squared,
/// symmetric) averages the two directional means:
///   0.5 * ( mean_a min_b |a-b|^2 + mean_b min_a |b-a|^2 )
struct ChamferOptions {
  bool squared = true;
  bool symmetric = true;
};

/// Mean (squared) nearest distance from every point of `from` into `to`.
inline double chamfer_directional(const PointCloud& from, const NnIndex& to,
                                  bool squared = true) {
  if (from.empty()) throw EmptyCloud("chamfer: empty cloud");
  double acc = 0.0;
  for (const Vec3& p : from.points) {
    const double d2 = to.nearest(p).squared_distance;
    acc += squared ? d2 : std::sqrt(d2);
  }
  return acc / static_cast<double>(from.size());
}

inline double chamfer_distance(const PointCloud& a, const NnIndex& a_index,
                               const PointCloud& b, const NnIndex& b_index,
                               const ChamferOptions& opts = {}) {
  if (a.empty() || b.empty()) throw EmptyCloud("chamfer: empty cloud");
  const double ab = chamfer_directional(a, b_index, opts.squared);
  if (!opts.symmetric) return ab;
  const double ba = chamfer_directional(b, a_index, opts.squared);
  return 0.5 * (ab + ba);
}

inline double chamfer_distance(const PointCloud& a, const PointCloud& b,
                               const ChamferOptions& opts = {}) {
  if (a.empty() || b.empty()) throw EmptyCloud("chamfer: empty cloud");
  const NnIndex b_index(b);
  if (!opts.symmetric) return chamfer_directional(a, b_index, opts.squared);
  const NnIndex a_index(a);
  return chamfer_distance(a, a_index, b, b_index, opts);
}

}  // namespace roomkit
