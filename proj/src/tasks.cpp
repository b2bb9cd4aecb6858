#include "armgrasp/tasks.hpp"

#include <cmath>
#include <stdexcept>

namespace armgrasp {

namespace {

// Elevation of the object axis above the horizontal plane, degrees.
double axis_elevation_deg(const RigidTransform& obj_pose) {
  Vec3 axis = obj_pose.rot.col(2);
  return std::atan2(axis.z(), axis.head<2>().norm()) * 180.0 / M_PI;
}

// Top rim of the pourer projects inside the receiver opening disc.
bool rim_inside_opening(const PouringTask& task, const RigidTransform& pourer_pose) {
  Vec3 center = task.receiver_pose.trans;
  double opening = task.receiver.radius;
  for (int i = 0; i < 16; ++i) {
    double a = 2.0 * M_PI * i / 16;
    Vec3 rim = pourer_pose * Vec3(task.pourer.radius * std::cos(a),
                                  task.pourer.radius * std::sin(a),
                                  task.pourer.height);
    if ((rim.head<2>() - center.head<2>()).norm() > opening) return false;
  }
  return true;
}

}  // namespace

double referential_rotation(const ArmModel& arm, const RigidTransform& start,
                            const Vec3& goal_pos) {
  Vec3 shoulder = arm.shoulder_point();
  Vec3 vs = start.trans - shoulder;
  Vec3 vg = goal_pos - shoulder;
  vs.z() = 0.0;  // project to the table plane
  vg.z() = 0.0;
  if (vs.norm() < 1e-9 || vg.norm() < 1e-9)
    throw std::domain_error("referential rotation: start or goal projects onto the shoulder");
  double angle = std::atan2(vs.x() * vg.y() - vs.y() * vg.x(), vs.dot(vg));
  return angle == -M_PI ? M_PI : angle;
}

std::vector<std::optional<RigidTransform>> goal_pose_guesses(
    const Scene& scene, const PickPlaceTask& task, const std::vector<Grasp>& grasps,
    int n_steps, int phi_samples) {
  double gamma = referential_rotation(scene.arm, task.start_pose, task.goal_position);

  std::vector<std::optional<RigidTransform>> guesses(grasps.size());
  for (std::size_t gi = 0; gi < grasps.size(); ++gi) {
    for (int i = 0; i <= n_steps; ++i) {
      double gamma_i = gamma * i / n_steps;
      RigidTransform candidate(RigidTransform::rot_z(gamma_i).rot * task.start_pose.rot,
                               task.goal_position);
      if (object_pose_in_collision(scene, task.object, candidate)) continue;
      if (exist_ik_sol(scene, task.object, candidate, grasps[gi], phi_samples)) {
        guesses[gi] = candidate;  // minimum rotation wins; stop searching
        break;
      }
    }
  }
  return guesses;
}

std::vector<RigidTransform> pouring_goal_guesses(const Scene& scene,
                                                 const PouringTask& task, int n_theta,
                                                 double clearance, int phi_samples) {
  std::vector<RigidTransform> kept;
  Vec3 center = task.receiver_pose.trans;
  double r_m = 0.5 * task.receiver.radius + task.pourer.radius;

  for (int i = 0; i < n_theta; ++i) {
    double theta = 2.0 * M_PI * i / n_theta;
    double c = std::cos(theta), s = std::sin(theta);
    Vec3 p = center + Vec3(r_m * c, r_m * s, task.receiver.height + clearance);
    Vec3 x(-c, -s, 0.0);
    Vec3 z(s, -c, 0.0);
    Mat3 rot;
    rot.col(0) = x;
    rot.col(1) = z.cross(x);
    rot.col(2) = z;
    RigidTransform hand(rot, p);
    if (exist_ik_sol_hand(scene, hand, phi_samples)) kept.push_back(hand);
  }
  return kept;
}

std::vector<std::optional<RigidTransform>> pouring_goal_guesses_for_grasps(
    const Scene& scene, const PouringTask& task, const std::vector<Grasp>& grasps,
    int n_theta, double clearance, int phi_samples) {
  std::vector<RigidTransform> rim =
      pouring_goal_guesses(scene, task, n_theta, clearance, phi_samples);

  std::vector<std::optional<RigidTransform>> guesses(grasps.size());
  for (std::size_t gi = 0; gi < grasps.size(); ++gi) {
    for (const RigidTransform& hand : rim) {
      bool feasible = false;
      for (const JointConfig& q :
           collision_free_ik(scene, hand, phi_samples, grasps[gi].held(task.pourer))) {
        if (check_tilt_feasible(scene, task, q, grasps[gi])) {
          feasible = true;
          break;
        }
      }
      if (feasible) {
        guesses[gi] = grasps[gi].object_pose_for(hand);
        break;
      }
    }
  }
  return guesses;
}

bool check_tilt_feasible(const Scene& scene, const PouringTask& task,
                         const JointConfig& q_goal, const Grasp& grasp) {
  HeldObject held = grasp.held(task.pourer);
  const auto& roll_limits = scene.arm.joint_limits[6];

  for (int dir : {+1, -1}) {
    for (int step = dir > 0 ? 0 : 1; step <= 30; ++step) {  // 1 degree increments
      JointConfig q = q_goal;
      q[6] = q_goal[6] + dir * step * M_PI / 180.0;
      if (q[6] < roll_limits[0] || q[6] > roll_limits[1]) break;  // no roll margin left
      if (arm_in_collision(scene, q, held)) break;

      RigidTransform pourer_pose =
          grasp.object_pose_for(forward_kinematics(scene.arm, q));
      double elev = axis_elevation_deg(pourer_pose);
      if (elev <= -task.tilt_min_deg && elev >= -task.tilt_max_deg &&
          rim_inside_opening(task, pourer_pose))
        return true;
    }
  }
  return false;
}

}  // namespace armgrasp
