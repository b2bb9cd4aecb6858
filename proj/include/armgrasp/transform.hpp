#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace armgrasp {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Rigid transform in SE(3): p_world = rot * p_local + trans.
struct RigidTransform {
  Mat3 rot = Mat3::Identity();
  Vec3 trans = Vec3::Zero();

  RigidTransform() = default;
  RigidTransform(const Mat3& r, const Vec3& t) : rot(r), trans(t) {}

  static RigidTransform identity() { return {}; }

  static RigidTransform translation(const Vec3& t) { return {Mat3::Identity(), t}; }

  static RigidTransform rot_x(double a) {
    return {Eigen::AngleAxisd(a, Vec3::UnitX()).toRotationMatrix(), Vec3::Zero()};
  }
  static RigidTransform rot_y(double a) {
    return {Eigen::AngleAxisd(a, Vec3::UnitY()).toRotationMatrix(), Vec3::Zero()};
  }
  static RigidTransform rot_z(double a) {
    return {Eigen::AngleAxisd(a, Vec3::UnitZ()).toRotationMatrix(), Vec3::Zero()};
  }

  /// From roll-pitch-yaw (extrinsic x-y-z) and a translation.
  static RigidTransform from_rpy(const Vec3& rpy, const Vec3& t) {
    Mat3 r = (Eigen::AngleAxisd(rpy.z(), Vec3::UnitZ()) *
              Eigen::AngleAxisd(rpy.y(), Vec3::UnitY()) *
              Eigen::AngleAxisd(rpy.x(), Vec3::UnitX()))
                 .toRotationMatrix();
    return {r, t};
  }

  RigidTransform operator*(const RigidTransform& o) const {
    return {rot * o.rot, rot * o.trans + trans};
  }

  Vec3 operator*(const Vec3& p) const { return rot * p + trans; }

  RigidTransform inverse() const {
    Mat3 rt = rot.transpose();
    return {rt, -(rt * trans)};
  }
};

/// Rotation angle of R (radians in [0, pi]); quaternion form stays
/// well-conditioned near zero where acos(trace) loses digits.
inline double rotation_angle(const Mat3& r) {
  Eigen::Quaterniond q(r);
  return 2.0 * std::atan2(q.vec().norm(), std::abs(q.w()));
}

/// Angular distance between two poses' orientations.
inline double orientation_distance(const RigidTransform& a, const RigidTransform& b) {
  return rotation_angle(a.rot.transpose() * b.rot);
}

inline double position_distance(const RigidTransform& a, const RigidTransform& b) {
  return (a.trans - b.trans).norm();
}

/// Wrap an angle to (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a + M_PI, 2.0 * M_PI);
  if (a <= 0.0) a += 2.0 * M_PI;
  return a - M_PI;
}

}  // namespace armgrasp
