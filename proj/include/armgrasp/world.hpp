#pragma once

#include <optional>
#include <string>
#include <vector>

#include "armgrasp/kinematics.hpp"
#include "armgrasp/transform.hpp"

namespace armgrasp {

enum class ShapeClass { cylinder, box, cone };

/// Symmetric tabletop object reduced to superquadric-style radius/height.
/// Object frame: origin at the bottom-face center, +z along the axis.
struct SqObject {
  std::string name;
  ShapeClass shape_class = ShapeClass::cylinder;
  double radius = 0.03;
  double height = 0.10;
  Vec3 com{0.0, 0.0, 0.05};  // object frame; defaults to the centroid

  static SqObject make(std::string name, ShapeClass shape, double radius,
                       double height) {
    SqObject o;
    o.name = std::move(name);
    o.shape_class = shape;
    o.radius = radius;
    o.height = height;
    o.com = Vec3(0.0, 0.0, height / 2.0);
    return o;
  }
};

struct Capsule {
  Vec3 a, b;
  double radius = 0.0;
};

struct Obb {
  RigidTransform pose;
  Vec3 half_extents{0.0, 0.0, 0.0};
};

/// Collision solids of one rigid body. Cylinders and cones reduce to capsules,
/// box-class objects to oriented boxes.
struct CollisionBody {
  std::vector<Capsule> capsules;
  std::vector<Obb> boxes;
};

struct SceneObject {
  SqObject object;
  RigidTransform pose;  // world from object frame
};

/// Object held in the hand: the body follows FK(q) composed with the grasp's
/// hand-to-object transform.
struct HeldObject {
  SqObject object;
  RigidTransform hand_to_object;
};

struct Scene {
  Vec3 table_center{0.0, 0.0, 0.0};
  Vec3 table_half_extents{0.0, 0.0, 0.0};
  std::vector<Obb> obstacles;
  std::vector<SceneObject> objects;
  ArmModel arm;

  double table_top() const { return table_center.z() + table_half_extents.z(); }
  bool has_table() const { return table_half_extents.norm() > 0.0; }

  const SceneObject* find_object(const std::string& name) const {
    for (const SceneObject& so : objects)
      if (so.object.name == name) return &so;
    return nullptr;
  }
};

/// Collision body of an object posed in the world.
CollisionBody object_body(const SqObject& obj, const RigidTransform& pose);

/// Arm link capsules at a configuration: base column, upper arm, forearm,
/// wrist-to-tool.
std::vector<Capsule> arm_capsules(const ArmModel& arm, const JointConfig& q);

/// True iff any arm capsule or the held object intersects the table, the
/// obstacles or the non-held scene objects; non-adjacent arm link pairs are
/// also tested against each other. Hand/object contact for the held object is
/// not modeled. Resting support contact with the table top does not count as
/// collision for object bodies.
bool arm_in_collision(const Scene& scene, const JointConfig& q,
                      const std::optional<HeldObject>& held = std::nullopt);

/// Object body vs. table, obstacles and other objects (entries sharing the
/// object's name are skipped, so a placement query does not collide with the
/// object's own current pose).
bool object_pose_in_collision(const Scene& scene, const SqObject& obj,
                              const RigidTransform& pose);

// Primitive tests, exposed for the harness and the test oracles.
double segment_distance(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1);
double point_box_distance(const Vec3& p, const Obb& box);
double segment_box_distance(const Vec3& a0, const Vec3& a1, const Obb& box);
bool obb_overlap(const Obb& a, const Obb& b, double inflation);
bool capsules_collide(const Capsule& a, const Capsule& b, double inflation);

}  // namespace armgrasp
