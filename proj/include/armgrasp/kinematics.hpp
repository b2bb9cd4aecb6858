#pragma once

#include <array>
#include <vector>

#include "armgrasp/transform.hpp"

namespace armgrasp {

/// Joint angles of the 7-DOF arm, radians.
struct JointConfig {
  std::array<double, 7> q{};

  double& operator[](int i) { return q[i]; }
  double operator[](int i) const { return q[i]; }

  /// Largest per-joint absolute difference.
  double max_abs_diff(const JointConfig& o) const {
    double d = 0.0;
    for (int i = 0; i < 7; ++i) d = std::max(d, std::abs(q[i] - o.q[i]));
    return d;
  }
};

/// Elbow self-motion angle, radians in [-pi, pi].
struct ElbowParameter {
  double phi = 0.0;
};

/// 7-DOF S-R-S arm: spherical shoulder (joints 1-3), revolute elbow (4),
/// spherical wrist (5-7). Segment lengths in meters, measured base->shoulder,
/// shoulder->elbow, elbow->wrist, wrist->tool.
struct ArmModel {
  double shoulder_offset = 0.30;
  double upper_arm = 0.35;
  double forearm = 0.30;
  double wrist_to_tool = 0.10;
  std::array<std::array<double, 2>, 7> joint_limits{};
  RigidTransform base_pose;
  /// Collision capsule radii: base column, upper arm, forearm, wrist-tool.
  std::array<double, 4> link_radii{0.07, 0.055, 0.045, 0.04};
  /// In-limits configuration used as the execution start posture.
  JointConfig ready;

  Vec3 shoulder_point() const { return base_pose * Vec3(0.0, 0.0, shoulder_offset); }

  /// Tool pose at the all-zero configuration: straight up, tool frame aligned
  /// with the base frame.
  RigidTransform home_pose() const {
    return base_pose *
           RigidTransform::translation(
               Vec3(0.0, 0.0, shoulder_offset + upper_arm + forearm + wrist_to_tool));
  }

  double max_reach() const { return upper_arm + forearm + wrist_to_tool; }

  bool within_limits(const JointConfig& q) const {
    for (int i = 0; i < 7; ++i)
      if (q[i] < joint_limits[i][0] || q[i] > joint_limits[i][1]) return false;
    return true;
  }

  /// Generic desk-scale 7-DOF arm fixture.
  static ArmModel generic();
};

/// Joint positions of a configuration, world frame.
struct ArmPoints {
  Vec3 base, shoulder, elbow, wrist, tool;
};

RigidTransform forward_kinematics(const ArmModel& arm, const JointConfig& q);
ArmPoints arm_points(const ArmModel& arm, const JointConfig& q);

struct IkStatus {
  /// Set when a branch was skipped because the target sits within epsilon of a
  /// kinematic singularity (elbow stretch/fold or wrist alignment).
  bool degenerate = false;
};

/// Closed-form IK for one tool target, precomputed so the elbow angle phi can
/// be swept cheaply. Solutions are joint-limit filtered, FK-verified and
/// deduplicated.
class IkSolver {
 public:
  IkSolver(const ArmModel& arm, const RigidTransform& target);

  bool reachable() const { return reachable_; }

  /// All branch solutions (up to 8) at the given elbow angle.
  std::vector<JointConfig> solve(double phi, IkStatus* status = nullptr) const;

  /// First in-limits solution at the given elbow angle that satisfies `accept`,
  /// if any; used for early-exit feasibility queries.
  template <typename Pred>
  bool any_solution(double phi, Pred&& accept) const {
    for (const JointConfig& q : solve(phi))
      if (accept(q)) return true;
    return false;
  }

 private:
  const ArmModel& arm_;
  RigidTransform target_;       // tool target in arm base frame
  bool reachable_ = false;
  Vec3 wrist_center_;           // base frame
  Vec3 sw_axis_;                // unit shoulder->wrist axis
  double elbow_angle_ = 0.0;    // magnitude of joint 4
  bool elbow_singular_ = false;
  // Per elbow sign: shoulder rotation R(phi) = As*sin + Bs*cos + Cs and the
  // wrist helper W(phi) = Aw*sin + Bw*cos + Cw.
  struct BranchCoeffs {
    Mat3 as, bs, cs;
    Mat3 aw, bw, cw;
  };
  std::array<BranchCoeffs, 2> coeffs_{};

  void append_branch(std::vector<JointConfig>& out, const Mat3& rs, const Mat3& rw,
                     double q4, int shoulder_sign, int wrist_sign,
                     IkStatus* status) const;
};

/// All joint-limit-respecting IK solutions at one elbow angle.
std::vector<JointConfig> analytic_ik(const ArmModel& arm, const RigidTransform& target,
                                     ElbowParameter phi, IkStatus* status = nullptr);

/// Union of analytic_ik over the uniform grid phi_k = -pi + 2*pi*k/phi_samples,
/// k = 0..phi_samples-1, deduplicated at 1e-6 rad per joint.
std::vector<JointConfig> ik_solution_set(const ArmModel& arm, const RigidTransform& target,
                                         int phi_samples, IkStatus* status = nullptr);

/// Elbow self-motion angle of a configuration (inverse of the solver's phi
/// parameterization, using the elbow-sign-matched reference plane).
double arm_angle_of(const ArmModel& arm, const JointConfig& q);

}  // namespace armgrasp
