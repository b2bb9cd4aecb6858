#pragma once

#include <string>
#include <vector>

#include "armgrasp/transform.hpp"
#include "armgrasp/world.hpp"

namespace armgrasp {

/// Largest object radius the hand can close around.
constexpr double kHandMaxAperture = 0.10;

/// A candidate grasp: where the object sits relative to the hand, plus the
/// approach line expressed in the hand frame. The finger preshape is carried
/// as an opaque label.
struct Grasp {
  RigidTransform hand_to_object;
  Vec3 approach_point{0.0, 0.0, 0.0};
  Vec3 approach_dir{0.0, 0.0, 1.0};
  std::string preshape;

  /// Hand pose that realizes this grasp on an object at `obj_pose`.
  RigidTransform hand_pose_for(const RigidTransform& obj_pose) const {
    return obj_pose * hand_to_object.inverse();
  }
  /// Object pose implied by the hand being at `hand_pose`.
  RigidTransform object_pose_for(const RigidTransform& hand_pose) const {
    return hand_pose * hand_to_object;
  }
  HeldObject held(const SqObject& obj) const { return {obj, hand_to_object}; }
};

/// Deterministic candidate grasps for a symmetric tabletop primitive: side
/// grasps evenly spaced in yaw at the 25/50/75% height bands approaching
/// radially inward, and top grasps evenly spaced in yaw approaching straight
/// down through the axis. Empty if the object is too wide for the hand.
std::vector<Grasp> generate_grasps(const SqObject& obj, int side_count, int top_count);

/// Perpendicular distance from the object's center of mass to the hand's
/// approach line, both taken in the object frame. Lower is better.
double grasp_metric(const SqObject& obj, const Grasp& g);

}  // namespace armgrasp
