#pragma once

#include <optional>
#include <vector>

#include "armgrasp/grasping.hpp"
#include "armgrasp/metrics.hpp"
#include "armgrasp/world.hpp"

namespace armgrasp {

/// Move an object from a full start pose to a 3D goal position, keeping it
/// upright; the goal yaw is left free.
struct PickPlaceTask {
  SqObject object;
  RigidTransform start_pose;
  Vec3 goal_position{0.0, 0.0, 0.0};
  bool upright_required = true;
  double success_tolerance = 0.02;
};

/// Bring a pourer above a receiver so its axis can dip 0..30 degrees below
/// horizontal with the top rim over the receiver opening.
struct PouringTask {
  SqObject pourer;
  RigidTransform pourer_start;
  SqObject receiver;
  RigidTransform receiver_pose;
  double tilt_min_deg = 0.0;
  double tilt_max_deg = 30.0;
};

constexpr int kDefaultGoalSteps = 8;    // rotation grid for pick-and-place guesses
constexpr int kDefaultPourThetas = 16;  // rim discretization for pouring guesses
constexpr double kDefaultPourClearance = 0.05;  // hand height over the rim, m

/// Signed table-plane yaw from the shoulder-to-start direction to the
/// shoulder-to-goal direction, in (-pi, pi]. Throws std::domain_error when a
/// projection degenerates (start or goal above the shoulder).
double referential_rotation(const ArmModel& arm, const RigidTransform& start,
                            const Vec3& goal_pos);

/// One goal pose guess per grasp: the object is tried at the goal position
/// with its start rotation turned by gamma*i/n_steps, i = 0..n_steps, and the
/// first candidate that is collision-free and reachable by the grasp is kept.
/// Grasps with no feasible candidate get a null guess.
std::vector<std::optional<RigidTransform>> goal_pose_guesses(
    const Scene& scene, const PickPlaceTask& task, const std::vector<Grasp>& grasps,
    int n_steps = kDefaultGoalSteps, int phi_samples = 64);

/// Hand poses ringing the receiver rim (radius receiver.radius/2 +
/// pourer.radius, height receiver.height + clearance above the receiver
/// position), approach tangent to the rim; only poses with a collision-free
/// IK solution are kept.
std::vector<RigidTransform> pouring_goal_guesses(const Scene& scene,
                                                 const PouringTask& task,
                                                 int n_theta = kDefaultPourThetas,
                                                 double clearance = kDefaultPourClearance,
                                                 int phi_samples = 64);

/// Per-grasp pourer goal poses built on the rim hand poses: for each grasp,
/// the first rim pose that admits a collision-free IK solution with the
/// pourer held and passes the tilt check; null when none does.
std::vector<std::optional<RigidTransform>> pouring_goal_guesses_for_grasps(
    const Scene& scene, const PouringTask& task, const std::vector<Grasp>& grasps,
    int n_theta = kDefaultPourThetas, double clearance = kDefaultPourClearance,
    int phi_samples = 64);

/// True iff rolling the last wrist joint by up to 30 degrees from q_goal stays
/// collision-free and in-limits, and reaches a state where the pourer axis
/// sits 0..30 degrees below horizontal with its top rim projecting inside the
/// receiver opening disc.
bool check_tilt_feasible(const Scene& scene, const PouringTask& task,
                         const JointConfig& q_goal, const Grasp& grasp);

}  // namespace armgrasp
