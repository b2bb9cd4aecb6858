#pragma once

#include <optional>
#include <vector>

#include "armgrasp/grasping.hpp"
#include "armgrasp/world.hpp"

namespace armgrasp {

enum class QualityGroup { very_good, good, fair, bad };

const char* to_string(QualityGroup g);

struct RankedEntry {
  Grasp grasp;
  int grasp_id = 0;             // index into the original candidate set
  double arm_metric = 0.0;      // raw count, or combined scaled value
  double grasp_metric = 0.0;    // meters
  QualityGroup group = QualityGroup::fair;
  std::optional<RigidTransform> goal_guess;
};

/// Grasps partitioned into four arm-metric quality groups and ordered by
/// group first, ascending grasp metric within each group.
struct RankedGraspSet {
  std::vector<RankedEntry> entries;  // original order
  std::vector<int> order;            // ranking position -> entry index
  double arm_mean = 0.0;
  double arm_stddev = 0.0;  // population

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
  const RankedEntry& ranked(std::size_t position) const {
    return entries[order[position]];
  }
};

/// Number of collision-free IK solutions that realize grasp `g` on the object
/// at `obj_pose`, over the phi grid. Zero means the grasp is infeasible there.
int arm_metric(const Scene& scene, const RigidTransform& obj_pose, const SqObject& obj,
               const Grasp& g, int phi_samples);

/// Batch arm metric over a candidate set; grasps are independent and evaluated
/// in parallel.
std::vector<int> arm_metrics(const Scene& scene, const RigidTransform& obj_pose,
                             const SqObject& obj, const std::vector<Grasp>& grasps,
                             int phi_samples);

/// Serial reference for the batch kernel.
std::vector<int> arm_metrics_serial(const Scene& scene, const RigidTransform& obj_pose,
                                    const SqObject& obj,
                                    const std::vector<Grasp>& grasps, int phi_samples);

/// True iff at least one collision-free IK solution reaches the grasp on the
/// object placed at `obj_pose` (the object rides along as held). Early-exits
/// on the first hit.
bool exist_ik_sol(const Scene& scene, const SqObject& obj, const RigidTransform& obj_pose,
                  const Grasp& g, int phi_samples);

/// Same test for a raw hand pose, optionally with a held object attached.
bool exist_ik_sol_hand(const Scene& scene, const RigidTransform& hand_pose,
                       int phi_samples,
                       const std::optional<HeldObject>& held = std::nullopt);

/// All collision-free IK solutions at a hand pose, in deterministic phi-grid
/// order.
std::vector<JointConfig> collision_free_ik(const Scene& scene,
                                           const RigidTransform& hand_pose,
                                           int phi_samples,
                                           const std::optional<HeldObject>& held);

/// Affine normalization of a metric vector to [0,1]; an all-equal vector maps
/// to all zeros (no information).
std::vector<double> feature_scale(const std::vector<double>& v);

/// Two-stage ordering: partition by arm-metric quality against mean +/- one
/// population stddev, then sort ascending grasp metric inside each group.
/// Ties keep original order. Entries need grasp/grasp_id/arm_metric/
/// grasp_metric filled in; groups, stats and order are computed here.
RankedGraspSet rank_m_ag(std::vector<RankedEntry> entries);

/// Convenience wrapper over parallel vectors; ids run 0..n-1.
RankedGraspSet rank_m_ag(const std::vector<Grasp>& grasps,
                         const std::vector<double>& arm_values,
                         const std::vector<double>& grasp_values);

/// Averaged two-pose variant: arm metrics at the start pose and at each
/// grasp's goal guess are feature-scaled to [0,1] and summed; grasps with a
/// null goal guess are dropped before ranking. Grasp metrics are unchanged
/// (they do not depend on the object pose).
RankedGraspSet rank_average(const Scene& scene, const SqObject& obj,
                            const std::vector<Grasp>& grasps,
                            const RigidTransform& start_pose,
                            const std::vector<std::optional<RigidTransform>>& goal_guesses,
                            int phi_samples);

/// Core of rank_average over already-computed metric vectors; goal values are
/// null exactly where the goal guess is null.
RankedGraspSet rank_average_values(const std::vector<Grasp>& grasps,
                                   const std::vector<double>& start_values,
                                   const std::vector<std::optional<double>>& goal_values,
                                   const std::vector<double>& grasp_values,
                                   const std::vector<std::optional<RigidTransform>>& goal_guesses);

}  // namespace armgrasp
