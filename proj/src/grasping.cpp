#include "armgrasp/grasping.hpp"

#include <cmath>

namespace armgrasp {

namespace {

Grasp side_grasp(const SqObject& obj, double yaw, double band) {
  double c = std::cos(yaw), s = std::sin(yaw);
  // Hand frame in object coordinates: approach (z) points radially inward,
  // x runs up the object axis so the object hangs axis-aligned with the hand.
  Mat3 rot;
  rot.col(0) = Vec3(0.0, 0.0, 1.0);
  rot.col(1) = Vec3(-s, c, 0.0);
  rot.col(2) = Vec3(-c, -s, 0.0);
  Vec3 pos(obj.radius * c, obj.radius * s, band * obj.height);

  Grasp g;
  g.hand_to_object = RigidTransform(rot, pos).inverse();
  g.preshape = "side";
  return g;
}

Grasp top_grasp(const SqObject& obj, double yaw) {
  double c = std::cos(yaw), s = std::sin(yaw);
  Mat3 rot;
  rot.col(0) = Vec3(c, s, 0.0);
  rot.col(1) = Vec3(s, -c, 0.0);
  rot.col(2) = Vec3(0.0, 0.0, -1.0);  // approach straight down the axis
  Vec3 pos(0.0, 0.0, obj.height);

  Grasp g;
  g.hand_to_object = RigidTransform(rot, pos).inverse();
  g.preshape = "top";
  return g;
}

}  // namespace

std::vector<Grasp> generate_grasps(const SqObject& obj, int side_count, int top_count) {
  std::vector<Grasp> grasps;
  if (obj.radius > kHandMaxAperture) return grasps;

  for (double band : {0.25, 0.5, 0.75})
    for (int k = 0; k < side_count; ++k)
      grasps.push_back(side_grasp(obj, 2.0 * M_PI * k / side_count, band));
  for (int k = 0; k < top_count; ++k)
    grasps.push_back(top_grasp(obj, 2.0 * M_PI * k / top_count));
  return grasps;
}

double grasp_metric(const SqObject& obj, const Grasp& g) {
  RigidTransform object_from_hand = g.hand_to_object.inverse();
  Vec3 point = object_from_hand * g.approach_point;
  Vec3 dir = object_from_hand.rot * g.approach_dir;
  Vec3 to_com = obj.com - point;
  return (to_com - to_com.dot(dir) * dir).norm();
}

}  // namespace armgrasp
