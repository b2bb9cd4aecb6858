#include "armgrasp/kinematics.hpp"

#include <cmath>

namespace armgrasp {

namespace {

constexpr double kSingularEps = 1e-4;   // elbow/wrist degeneracy window, rad
constexpr double kDuplicateTol = 1e-6;  // per-joint solution dedup, rad
constexpr double kVerifyPos = 1e-7;     // FK round-trip acceptance, m
constexpr double kVerifyRot = 1e-7;     // FK round-trip acceptance, rad

// Classic DH step with a = 0: rotate about z by theta, offset d along z,
// then twist about x by alpha.
RigidTransform dh(double d, double theta, double alpha) {
  double ct = std::cos(theta), st = std::sin(theta);
  double ca = std::cos(alpha), sa = std::sin(alpha);
  Mat3 r;
  r << ct, -st * ca, st * sa,
       st,  ct * ca, -ct * sa,
       0.0, sa, ca;
  return {r, Vec3(0.0, 0.0, d)};
}

Mat3 cross_matrix(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
      -v.y(), v.x(), 0.0;
  return m;
}

double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

}  // namespace

ArmModel ArmModel::generic() {
  ArmModel arm;
  for (auto& lim : arm.joint_limits) lim = {-2.96, 2.96};
  arm.joint_limits[3] = {0.1, 2.9};  // elbow never hyperextends
  arm.ready.q = {0.0, 0.5, 0.0, 1.5, 0.0, 0.5, 0.0};
  return arm;
}

RigidTransform forward_kinematics(const ArmModel& arm, const JointConfig& q) {
  return arm.base_pose *
         dh(arm.shoulder_offset, q[0], -M_PI / 2.0) * dh(0.0, q[1], M_PI / 2.0) *
         dh(arm.upper_arm, q[2], M_PI / 2.0) * dh(0.0, q[3], -M_PI / 2.0) *
         dh(arm.forearm, q[4], -M_PI / 2.0) * dh(0.0, q[5], M_PI / 2.0) *
         dh(arm.wrist_to_tool, q[6], 0.0);
}

ArmPoints arm_points(const ArmModel& arm, const JointConfig& q) {
  ArmPoints pts;
  RigidTransform t = arm.base_pose * dh(arm.shoulder_offset, q[0], -M_PI / 2.0) *
                     dh(0.0, q[1], M_PI / 2.0);
  pts.base = arm.base_pose.trans;
  pts.shoulder = t.trans;
  t = t * dh(arm.upper_arm, q[2], M_PI / 2.0) * dh(0.0, q[3], -M_PI / 2.0);
  pts.elbow = t.trans;
  t = t * dh(arm.forearm, q[4], -M_PI / 2.0) * dh(0.0, q[5], M_PI / 2.0);
  pts.wrist = t.trans;
  pts.tool = (t * dh(arm.wrist_to_tool, q[6], 0.0)).trans;
  return pts;
}

IkSolver::IkSolver(const ArmModel& arm, const RigidTransform& target) : arm_(arm) {
  target_ = arm.base_pose.inverse() * target;

  const double l_bs = arm.shoulder_offset;
  const double l_se = arm.upper_arm;
  const double l_ew = arm.forearm;
  const double l_wt = arm.wrist_to_tool;

  Vec3 shoulder(0.0, 0.0, l_bs);
  wrist_center_ = target_.trans - target_.rot * Vec3(0.0, 0.0, l_wt);
  Vec3 sw = wrist_center_ - shoulder;
  double l_sw = sw.norm();

  if ((target_.trans - shoulder).norm() > arm.max_reach() ||
      l_sw > l_se + l_ew || l_sw < std::abs(l_se - l_ew)) {
    return;  // outside the reachable annulus
  }
  reachable_ = true;

  elbow_angle_ = clamped_acos((l_sw * l_sw - l_se * l_se - l_ew * l_ew) /
                              (2.0 * l_se * l_ew));
  elbow_singular_ =
      elbow_angle_ < kSingularEps || elbow_angle_ > M_PI - kSingularEps;

  sw_axis_ = sw / l_sw;
  Mat3 u_cross = cross_matrix(sw_axis_);

  double xy = std::hypot(sw.x(), sw.y());
  double yaw_v = xy < 1e-12 ? 0.0 : std::atan2(sw.y(), sw.x());
  double polar = std::atan2(xy, sw.z());
  double beta =
      clamped_acos((l_se * l_se + l_sw * l_sw - l_ew * l_ew) / (2.0 * l_se * l_sw));

  for (int side = 0; side < 2; ++side) {
    // Reference (phi = 0) upper-arm frame: the in-plane virtual configuration
    // with joint 3 zeroed, one per elbow sign.
    double pitch_v = side == 0 ? polar + beta : polar - beta;
    Mat3 ref = (dh(l_bs, yaw_v, -M_PI / 2.0) * dh(0.0, pitch_v, M_PI / 2.0) *
                dh(l_se, 0.0, M_PI / 2.0))
                   .rot;
    BranchCoeffs& c = coeffs_[side];
    c.as = u_cross * ref;
    c.bs = -u_cross * c.as;
    c.cs = sw_axis_ * sw_axis_.transpose() * ref;

    double q4 = side == 0 ? elbow_angle_ : -elbow_angle_;
    Mat3 elbow = dh(0.0, q4, -M_PI / 2.0).rot;
    c.aw = elbow.transpose() * c.as.transpose() * target_.rot;
    c.bw = elbow.transpose() * c.bs.transpose() * target_.rot;
    c.cw = elbow.transpose() * c.cs.transpose() * target_.rot;
  }
}

void IkSolver::append_branch(std::vector<JointConfig>& out, const Mat3& rs,
                             const Mat3& rw, double q4, int shoulder_sign,
                             int wrist_sign, IkStatus* status) const {
  double wrist_bend = clamped_acos(rw(2, 2));
  if (wrist_bend < kSingularEps || wrist_bend > M_PI - kSingularEps) {
    // Joints 5 and 7 align with the forearm axis; the extraction degenerates.
    if (status) status->degenerate = true;
    return;
  }

  JointConfig q;
  if (shoulder_sign > 0) {
    q[0] = std::atan2(rs(1, 1), rs(0, 1));
    q[1] = clamped_acos(rs(2, 1));
    q[2] = std::atan2(-rs(2, 2), -rs(2, 0));
  } else {
    q[0] = std::atan2(-rs(1, 1), -rs(0, 1));
    q[1] = -clamped_acos(rs(2, 1));
    q[2] = std::atan2(rs(2, 2), rs(2, 0));
  }
  q[3] = q4;
  if (wrist_sign > 0) {
    q[4] = std::atan2(rw(1, 2), rw(0, 2));
    q[5] = wrist_bend;
    q[6] = std::atan2(rw(2, 1), -rw(2, 0));
  } else {
    q[4] = std::atan2(-rw(1, 2), -rw(0, 2));
    q[5] = -wrist_bend;
    q[6] = std::atan2(-rw(2, 1), rw(2, 0));
  }

  if (!arm_.within_limits(q)) return;

  RigidTransform fk = forward_kinematics(arm_, q);
  RigidTransform tgt = arm_.base_pose * target_;
  if (position_distance(fk, tgt) > kVerifyPos ||
      orientation_distance(fk, tgt) > kVerifyRot)
    return;

  for (const JointConfig& seen : out)
    if (seen.max_abs_diff(q) < kDuplicateTol) return;
  out.push_back(q);
}

std::vector<JointConfig> IkSolver::solve(double phi, IkStatus* status) const {
  std::vector<JointConfig> out;
  if (!reachable_) return out;
  if (elbow_singular_) {
    if (status) status->degenerate = true;
    return out;
  }

  double s = std::sin(phi), c = std::cos(phi);
  for (int side = 0; side < 2; ++side) {
    const BranchCoeffs& bc = coeffs_[side];
    Mat3 rs = bc.as * s + bc.bs * c + bc.cs;
    Mat3 rw = bc.aw * s + bc.bw * c + bc.cw;
    double q4 = side == 0 ? elbow_angle_ : -elbow_angle_;
    for (int shoulder_sign : {+1, -1})
      for (int wrist_sign : {+1, -1})
        append_branch(out, rs, rw, q4, shoulder_sign, wrist_sign, status);
  }
  return out;
}

std::vector<JointConfig> analytic_ik(const ArmModel& arm, const RigidTransform& target,
                                     ElbowParameter phi, IkStatus* status) {
  return IkSolver(arm, target).solve(phi.phi, status);
}

std::vector<JointConfig> ik_solution_set(const ArmModel& arm,
                                         const RigidTransform& target,
                                         int phi_samples, IkStatus* status) {
  std::vector<JointConfig> out;
  if (phi_samples < 1) return out;
  IkSolver solver(arm, target);
  if (!solver.reachable()) return out;
  for (int k = 0; k < phi_samples; ++k) {
    double phi = -M_PI + 2.0 * M_PI * k / phi_samples;
    for (const JointConfig& q : solver.solve(phi, status)) {
      bool dup = false;
      for (const JointConfig& seen : out)
        if (seen.max_abs_diff(q) < kDuplicateTol) {
          dup = true;
          break;
        }
      if (!dup) out.push_back(q);
    }
  }
  return out;
}

double arm_angle_of(const ArmModel& arm, const JointConfig& q) {
  ArmPoints pts = arm_points(arm, q);
  // Work in the arm base frame.
  RigidTransform inv = arm.base_pose.inverse();
  Vec3 shoulder = inv * pts.shoulder;
  Vec3 elbow = inv * pts.elbow;
  Vec3 wrist = inv * pts.wrist;

  Vec3 sw = wrist - shoulder;
  double l_sw = sw.norm();
  Vec3 u = sw / l_sw;

  double xy = std::hypot(sw.x(), sw.y());
  double yaw_v = xy < 1e-12 ? 0.0 : std::atan2(sw.y(), sw.x());
  double polar = std::atan2(xy, sw.z());
  double beta = clamped_acos(
      (arm.upper_arm * arm.upper_arm + l_sw * l_sw - arm.forearm * arm.forearm) /
      (2.0 * arm.upper_arm * l_sw));
  double pitch_v = q[3] >= 0.0 ? polar + beta : polar - beta;

  Vec3 elbow_ref(std::cos(yaw_v) * std::sin(pitch_v),
                 std::sin(yaw_v) * std::sin(pitch_v), std::cos(pitch_v));
  Vec3 elbow_dir = (elbow - shoulder).normalized();

  Vec3 ref_perp = (elbow_ref - elbow_ref.dot(u) * u).normalized();
  Vec3 act_perp = (elbow_dir - elbow_dir.dot(u) * u).normalized();
  return std::atan2(u.dot(ref_perp.cross(act_perp)), ref_perp.dot(act_perp));
}

}  // namespace armgrasp
