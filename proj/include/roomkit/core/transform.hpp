#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cmath>

#include "roomkit/errors.hpp"

namespace roomkit {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Mat3 = Eigen::Matrix3d;

/// Rigid body motion x -> R * x + t.
struct RigidTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }

  /// Rotates a direction (no translation).
  Vec3 apply_dir(const Vec3& d) const { return rotation * d; }

  RigidTransform inverse() const {
    return {rotation.transpose(), -(rotation.transpose() * translation)};
  }

  /// this ∘ other: apply `other` first, then this.
  RigidTransform compose(const RigidTransform& other) const {
    return {rotation * other.rotation,
            rotation * other.translation + translation};
  }

  bool is_valid(double tol = 1e-9) const {
    const Mat3 rrt = rotation * rotation.transpose();
    return (rrt - Mat3::Identity()).cwiseAbs().maxCoeff() <= tol &&
           std::abs(rotation.determinant() - 1.0) <= tol &&
           translation.allFinite();
  }

  static RigidTransform identity() { return {}; }

  static RigidTransform rotation_about(const Vec3& axis, double angle_rad,
                                       const Vec3& t = Vec3::Zero()) {
    return {Eigen::AngleAxisd(angle_rad, axis.normalized()).toRotationMatrix(),
            t};
  }
};

inline double deg_to_rad(double deg) {
  return deg * (3.14159265358979323846 / 180.0);
}

inline double rad_to_deg(double rad) {
  return rad * (180.0 / 3.14159265358979323846);
}

/// Quaternion (w, x, y, z) to rotation matrix. Normalizes the input;
/// deviation_out (optional) receives | |q| - 1 |. Near-zero quaternions are
/// rejected.
inline Mat3 rotation_from_quaternion(double w, double x, double y, double z,
                                     double* deviation_out = nullptr) {
  const double norm = std::sqrt(w * w + x * x + y * y + z * z);
  if (!(norm > 1e-12)) {
    throw InvalidArgument("quaternion has (near-)zero norm");
  }
  if (deviation_out) *deviation_out = std::abs(norm - 1.0);
  Eigen::Quaterniond q(w / norm, x / norm, y / norm, z / norm);
  return q.toRotationMatrix();
}

}  // namespace roomkit
