#pragma once

#include <Eigen/Eigenvalues>
#include <array>
#include <string>

#include "roomkit/core/point_cloud.hpp"

namespace roomkit {

/// Centered covariance eigen-decomposition of a point set.
///
/// Axes are unit length, ordered by descending eigenvalue, and form a
/// right-handed frame (the third axis is the cross product of the first
/// two). Extents are max-min projection spans along the axes.
struct PrincipalAxes {
  Vec3 centroid = Vec3::Zero();
  std::array<Vec3, 3> axes{Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
  std::array<double, 3> eigenvalues{0.0, 0.0, 0.0};
  std::array<double, 3> extents{0.0, 0.0, 0.0};
};

/// PCA of a cloud. Throws DegenerateCloud when there are fewer than 3
/// points or all points coincide. Collinear input is allowed: the first
/// axis is still the dominant direction, the remaining two span its
/// orthogonal complement with eigenvalue 0.
inline PrincipalAxes compute_pca(const PointCloud& cloud) {
  const auto& pts = cloud.points;
  if (pts.size() < 3) {
    throw DegenerateCloud("compute_pca: need at least 3 points, got " +
                          std::to_string(pts.size()));
  }
  Vec3 c = Vec3::Zero();
  for (const Vec3& p : pts) c += p;
  c /= static_cast<double>(pts.size());

  Mat3 cov = Mat3::Zero();
  double spread_sq = 0.0;
  for (const Vec3& p : pts) {
    const Vec3 d = p - c;
    cov.noalias() += d * d.transpose();
    spread_sq = std::max(spread_sq, d.squaredNorm());
  }
  cov /= static_cast<double>(pts.size());
  if (spread_sq < 1e-24) {
    throw DegenerateCloud("compute_pca: all points coincident");
  }

  Eigen::SelfAdjointEigenSolver<Mat3> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw DegenerateCloud("compute_pca: eigen decomposition failed");
  }

  PrincipalAxes out;
  out.centroid = c;
  // Eigen returns ascending eigenvalues.
  out.axes[0] = solver.eigenvectors().col(2);
  out.axes[1] = solver.eigenvectors().col(1);
  out.axes[2] = out.axes[0].cross(out.axes[1]);  // right-handed
  for (int i = 0; i < 3; ++i) {
    out.eigenvalues[i] = std::max(0.0, solver.eigenvalues()(2 - i));
  }
  for (int i = 0; i < 3; ++i) {
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const Vec3& p : pts) {
      const double s = (p - c).dot(out.axes[i]);
      if (first) {
        lo = hi = s;
        first = false;
      } else {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
    }
    out.extents[i] = hi - lo;
  }
  return out;
}

/// 2D analogue used for in-plane axis estimation.
struct PrincipalAxes2d {
  Vec2 centroid = Vec2::Zero();
  std::array<Vec2, 2> axes{Vec2(1, 0), Vec2(0, 1)};
  std::array<double, 2> eigenvalues{0.0, 0.0};
  std::array<double, 2> extents{0.0, 0.0};
};

inline PrincipalAxes2d compute_pca_2d(const std::vector<Vec2>& pts) {
  if (pts.size() < 2) {
    throw DegenerateCloud("compute_pca_2d: need at least 2 points");
  }
  Vec2 c = Vec2::Zero();
  for (const Vec2& p : pts) c += p;
  c /= static_cast<double>(pts.size());

  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (const Vec2& p : pts) {
    const Vec2 d = p - c;
    cov.noalias() += d * d.transpose();
  }
  cov /= static_cast<double>(pts.size());

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw DegenerateCloud("compute_pca_2d: eigen decomposition failed");
  }

  PrincipalAxes2d out;
  out.centroid = c;
  out.axes[0] = solver.eigenvectors().col(1);
  out.axes[1] = solver.eigenvectors().col(0);
  out.eigenvalues = {std::max(0.0, solver.eigenvalues()(1)),
                     std::max(0.0, solver.eigenvalues()(0))};
  for (int i = 0; i < 2; ++i) {
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const Vec2& p : pts) {
      const double s = (p - c).dot(out.axes[i]);
      if (first) {
        lo = hi = s;
        first = false;
      } else {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
    }
    out.extents[i] = hi - lo;
  }
  return out;
}

}  // namespace roomkit
