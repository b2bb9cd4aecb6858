#include "armgrasp/world.hpp"

#include <cmath>

namespace armgrasp {

namespace {

constexpr double kBodyMargin = 0.002;   // inflation per body, m
constexpr double kSupportTol = 1e-4;    // tolerated table penetration, m

// Closest distance between two segments (Ericson, Real-Time Collision
// Detection, 5.1.9).
double segment_distance_impl(const Vec3& p1, const Vec3& q1, const Vec3& p2,
                             const Vec3& q2) {
  Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
  double a = d1.dot(d1), e = d2.dot(d2), f = d2.dot(r);
  double s = 0.0, t = 0.0;
  const double eps = 1e-12;

  if (a <= eps && e <= eps) return r.norm();
  if (a <= eps) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    double c = d1.dot(r);
    if (e <= eps) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      double b = d1.dot(d2);
      double denom = a * e - b * b;
      s = denom > eps ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return ((p1 + d1 * s) - (p2 + d2 * t)).norm();
}

struct BodyRef {
  const CollisionBody* body;
  bool support_contact;  // table-style body: only real penetration counts
};

bool bodies_collide(const CollisionBody& a, const CollisionBody& b,
                    double inflation) {
  for (const Capsule& ca : a.capsules) {
    for (const Capsule& cb : b.capsules)
      if (segment_distance(ca.a, ca.b, cb.a, cb.b) <
          ca.radius + cb.radius + inflation)
        return true;
    for (const Obb& box : b.boxes)
      if (segment_box_distance(ca.a, ca.b, box) < ca.radius + inflation) return true;
  }
  for (const Obb& box : a.boxes) {
    for (const Capsule& cb : b.capsules)
      if (segment_box_distance(cb.a, cb.b, box) < cb.radius + inflation) return true;
    for (const Obb& bb : b.boxes)
      if (obb_overlap(box, bb, inflation)) return true;
  }
  return false;
}

bool body_hits_obb(const CollisionBody& body, const Obb& box, double inflation) {
  for (const Capsule& c : body.capsules)
    if (segment_box_distance(c.a, c.b, box) < c.radius + inflation) return true;
  for (const Obb& b : body.boxes)
    if (obb_overlap(b, box, inflation)) return true;
  return false;
}

// The table counts only genuine penetration so that objects may rest on it;
// everything else uses the inflated conservative test.
bool body_hits_scene(const CollisionBody& body, const Scene& scene,
                     const std::string& skip_object, bool support_rule) {
  if (scene.has_table()) {
    Obb table{RigidTransform::translation(scene.table_center), scene.table_half_extents};
    double inflation = support_rule ? -kSupportTol : 2.0 * kBodyMargin;
    if (body_hits_obb(body, table, inflation)) return true;
  }
  for (const Obb& obs : scene.obstacles)
    if (body_hits_obb(body, obs, 2.0 * kBodyMargin)) return true;
  for (const SceneObject& so : scene.objects) {
    if (!skip_object.empty() && so.object.name == skip_object) continue;
    if (bodies_collide(body, object_body(so.object, so.pose), 2.0 * kBodyMargin))
      return true;
  }
  return false;
}

}  // namespace

double segment_distance(const Vec3& a0, const Vec3& a1, const Vec3& b0,
                        const Vec3& b1) {
  // Canonical argument order keeps the test exactly symmetric.
  auto key = [](const Vec3& p, const Vec3& q) {
    return std::array<double, 6>{p.x(), p.y(), p.z(), q.x(), q.y(), q.z()};
  };
  if (key(a0, a1) <= key(b0, b1)) return segment_distance_impl(a0, a1, b0, b1);
  return segment_distance_impl(b0, b1, a0, a1);
}

double point_box_distance(const Vec3& p, const Obb& box) {
  Vec3 local = box.pose.inverse() * p;
  Vec3 clamped = local.cwiseMax(-box.half_extents).cwiseMin(box.half_extents);
  return (local - clamped).norm();
}

double segment_box_distance(const Vec3& a0, const Vec3& a1, const Obb& box) {
  // Work in the box frame so each probe is a plain clamp.
  RigidTransform inv = box.pose.inverse();
  Vec3 p0 = inv * a0;
  Vec3 d = inv * a1 - p0;
  auto f = [&](double t) {
    Vec3 p = p0 + t * d;
    Vec3 clamped = p.cwiseMax(-box.half_extents).cwiseMin(box.half_extents);
    return (p - clamped).norm();
  };
  // Distance to a convex set along a segment is convex in the parameter, so
  // ternary search converges to the global minimum.
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 48; ++it) {
    double m1 = lo + (hi - lo) / 3.0;
    double m2 = hi - (hi - lo) / 3.0;
    if (f(m1) <= f(m2))
      hi = m2;
    else
      lo = m1;
  }
  return f((lo + hi) / 2.0);
}

bool obb_overlap(const Obb& a, const Obb& b, double inflation) {
  // Separating-axis test over face normals and edge cross products.
  Mat3 ra = a.pose.rot, rb = b.pose.rot;
  Vec3 t = b.pose.trans - a.pose.trans;
  Vec3 ea = a.half_extents, eb = b.half_extents;

  auto separated = [&](const Vec3& axis) {
    double proj_a = 0.0, proj_b = 0.0;
    for (int i = 0; i < 3; ++i) {
      proj_a += ea[i] * std::abs(axis.dot(ra.col(i)));
      proj_b += eb[i] * std::abs(axis.dot(rb.col(i)));
    }
    return std::abs(axis.dot(t)) > proj_a + proj_b + inflation;
  };

  for (int i = 0; i < 3; ++i)
    if (separated(ra.col(i))) return false;
  for (int i = 0; i < 3; ++i)
    if (separated(rb.col(i))) return false;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Vec3 cross = ra.col(i).cross(rb.col(j));
      double n2 = cross.squaredNorm();
      if (n2 > 1e-12 && separated(cross / std::sqrt(n2))) return false;
    }
  return true;
}

bool capsules_collide(const Capsule& a, const Capsule& b, double inflation) {
  return segment_distance(a.a, a.b, b.a, b.b) < a.radius + b.radius + inflation;
}

CollisionBody object_body(const SqObject& obj, const RigidTransform& pose) {
  CollisionBody body;
  if (obj.shape_class == ShapeClass::box) {
    Obb box;
    box.pose = pose * RigidTransform::translation(Vec3(0.0, 0.0, obj.height / 2.0));
    box.half_extents = Vec3(obj.radius, obj.radius, obj.height / 2.0);
    body.boxes.push_back(box);
  } else {
    // Cylinders and cones become a capsule spanning the axis; the cone keeps
    // its maximum radius.
    double cap = std::min(obj.radius, obj.height / 2.0);
    Capsule c;
    c.a = pose * Vec3(0.0, 0.0, cap);
    c.b = pose * Vec3(0.0, 0.0, obj.height - cap);
    c.radius = obj.radius;
    body.capsules.push_back(c);
  }
  return body;
}

std::vector<Capsule> arm_capsules(const ArmModel& arm, const JointConfig& q) {
  ArmPoints pts = arm_points(arm, q);
  return {
      {pts.base, pts.shoulder, arm.link_radii[0]},
      {pts.shoulder, pts.elbow, arm.link_radii[1]},
      {pts.elbow, pts.wrist, arm.link_radii[2]},
      {pts.wrist, pts.tool, arm.link_radii[3]},
  };
}

bool arm_in_collision(const Scene& scene, const JointConfig& q,
                      const std::optional<HeldObject>& held) {
  std::vector<Capsule> links = arm_capsules(scene.arm, q);

  // Self collision between non-adjacent links.
  for (size_t i = 0; i + 2 < links.size(); ++i)
    for (size_t j = i + 2; j < links.size(); ++j)
      if (capsules_collide(links[i], links[j], 2.0 * kBodyMargin)) return true;

  CollisionBody arm_body;
  arm_body.capsules = links;
  std::string held_name = held ? held->object.name : std::string();
  if (body_hits_scene(arm_body, scene, held_name, /*support_rule=*/false))
    return true;

  if (held) {
    RigidTransform obj_pose =
        forward_kinematics(scene.arm, q) * held->hand_to_object;
    CollisionBody body = object_body(held->object, obj_pose);
    if (body_hits_scene(body, scene, held_name, /*support_rule=*/true)) return true;
  }
  return false;
}

bool object_pose_in_collision(const Scene& scene, const SqObject& obj,
                              const RigidTransform& pose) {
  return body_hits_scene(object_body(obj, pose), scene, obj.name,
                         /*support_rule=*/true);
}

}  // namespace armgrasp
