#include "armgrasp/planner.hpp"

#include <chrono>
#include <cmath>
#include <random>

namespace armgrasp {

namespace {

double joint_distance(const JointConfig& a, const JointConfig& b) {
  double d2 = 0.0;
  for (int i = 0; i < 7; ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(d2);
}

JointConfig interpolate(const JointConfig& a, const JointConfig& b, double t) {
  JointConfig q;
  for (int i = 0; i < 7; ++i) q[i] = a[i] + t * (b[i] - a[i]);
  return q;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

// Scene with the manipulated object dropped: approach and retreat corridors
// treat the object assigned to the gripper as non-blocking.
Scene scene_without(const Scene& scene, const std::string& name) {
  Scene out = scene;
  std::erase_if(out.objects,
                [&](const SceneObject& so) { return so.object.name == name; });
  return out;
}

JointConfig pick_closest(const std::vector<JointConfig>& candidates,
                         const JointConfig& reference) {
  std::size_t best = 0;
  double best_d = joint_distance(candidates[0], reference);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    double d = joint_distance(candidates[i], reference);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return candidates[best];
}

struct StageRunner {
  const Scene& scene;
  int budget;
  std::uint64_t seed;
  TaskOutcome& outcome;
  double displacement = 0.0;
  int stage_index = 0;

  bool plan(const Scene& stage_scene, const JointConfig& from, const JointConfig& to,
            const std::optional<HeldObject>& held, const char* label) {
    PlanStats stats;
    std::optional<JointPath> path =
        plan_rrt(stage_scene, from, to, held, seed + stage_index++, budget, &stats);
    outcome.plan_nodes += stats.nodes;
    outcome.plan_wall_seconds += stats.wall_seconds;
    if (!path) {
      outcome.failed_stage = label;
      return false;
    }
    displacement += path_hand_displacement(stage_scene.arm, *path);
    return true;
  }
};

}  // namespace

bool segment_valid(const Scene& scene, const JointConfig& a, const JointConfig& b,
                   const std::optional<HeldObject>& held, double resolution) {
  int steps = std::max(1, static_cast<int>(std::ceil(a.max_abs_diff(b) / resolution)));
  for (int i = 1; i <= steps; ++i)
    if (arm_in_collision(scene, interpolate(a, b, static_cast<double>(i) / steps), held))
      return false;
  return true;
}

std::optional<JointPath> plan_rrt(const Scene& scene, const JointConfig& start,
                                  const JointConfig& goal,
                                  const std::optional<HeldObject>& held,
                                  std::uint64_t seed, int budget, PlanStats* stats) {
  Timer timer;
  PlanStats local;
  auto finish = [&](std::optional<JointPath> result) {
    local.wall_seconds = timer.elapsed();
    if (stats) *stats = local;
    return result;
  };

  if (arm_in_collision(scene, start, held) || arm_in_collision(scene, goal, held))
    return finish(std::nullopt);

  if (start.max_abs_diff(goal) < 1e-12) return finish(JointPath{{start}});
  if (segment_valid(scene, start, goal, held))
    return finish(JointPath{{start, goal}});

  struct Node {
    JointConfig q;
    int parent;
  };
  std::vector<Node> tree{{start, -1}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  auto sample = [&]() {
    if (coin(rng) < kRrtGoalBias) return goal;
    JointConfig q;
    for (int j = 0; j < 7; ++j) {
      std::uniform_real_distribution<double> dist(scene.arm.joint_limits[j][0],
                                                  scene.arm.joint_limits[j][1]);
      q[j] = dist(rng);
    }
    return q;
  };

  auto nearest = [&](const JointConfig& q) {
    int best = 0;
    double best_d = joint_distance(tree[0].q, q);
    for (std::size_t i = 1; i < tree.size(); ++i) {
      double d = joint_distance(tree[i].q, q);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    return best;
  };

  auto extract = [&](int leaf) {
    JointPath path;
    for (int i = leaf; i >= 0; i = tree[i].parent) path.waypoints.push_back(tree[i].q);
    std::reverse(path.waypoints.begin(), path.waypoints.end());
    return path;
  };

  while (local.nodes < budget) {
    JointConfig target = sample();
    int near = nearest(target);

    // Greedy connect: keep stepping toward the sample while the segments stay
    // valid.
    while (local.nodes < budget) {
      double dist = joint_distance(tree[near].q, target);
      if (dist < 1e-12) break;
      JointConfig next = dist <= kRrtStep
                             ? target
                             : interpolate(tree[near].q, target, kRrtStep / dist);
      if (!segment_valid(scene, tree[near].q, next, held)) break;
      tree.push_back({next, near});
      ++local.nodes;
      near = static_cast<int>(tree.size()) - 1;

      if (next.max_abs_diff(goal) < 1e-12) return finish(extract(near));
      if (joint_distance(next, goal) <= 3.0 * kRrtStep &&
          segment_valid(scene, next, goal, held)) {
        tree.push_back({goal, near});
        ++local.nodes;
        return finish(extract(static_cast<int>(tree.size()) - 1));
      }
      if (dist <= kRrtStep) break;  // reached the sample
    }
  }
  return finish(std::nullopt);
}

double path_hand_displacement(const ArmModel& arm, const JointPath& path) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i) {
    const JointConfig& a = path.waypoints[i];
    const JointConfig& b = path.waypoints[i + 1];
    int steps =
        std::max(1, static_cast<int>(std::ceil(a.max_abs_diff(b) / path.resolution)));
    Vec3 prev = forward_kinematics(arm, a).trans;
    for (int s = 1; s <= steps; ++s) {
      Vec3 cur =
          forward_kinematics(arm, interpolate(a, b, static_cast<double>(s) / steps)).trans;
      total += (cur - prev).norm();
      prev = cur;
    }
  }
  return total;
}

TaskOutcome execute_pick_place(const Scene& scene, const PickPlaceTask& task,
                               const RankedGraspSet& ranked, int pick_rank,
                               int budget, std::uint64_t seed, int phi_samples) {
  TaskOutcome outcome;
  if (ranked.empty() || pick_rank < 0 ||
      static_cast<std::size_t>(pick_rank) >= ranked.size()) {
    outcome.failed_stage = "rank";
    return outcome;
  }
  const RankedEntry& chosen = ranked.ranked(pick_rank);
  outcome.grasp_id = chosen.grasp_id;
  outcome.group = chosen.group;
  const Grasp& grasp = chosen.grasp;

  StageRunner run{scene, budget, seed, outcome};

  std::vector<JointConfig> pick_candidates = collision_free_ik(
      scene, grasp.hand_pose_for(task.start_pose), phi_samples, grasp.held(task.object));
  if (pick_candidates.empty()) {
    outcome.failed_stage = "reach";
    return outcome;
  }
  JointConfig q_pick = pick_closest(pick_candidates, scene.arm.ready);

  std::optional<RigidTransform> goal_pose = chosen.goal_guess;
  if (!goal_pose)
    goal_pose = goal_pose_guesses(scene, task, {grasp}, kDefaultGoalSteps, phi_samples)[0];
  if (!goal_pose) {
    outcome.failed_stage = "place";
    return outcome;
  }

  std::vector<JointConfig> place_candidates = collision_free_ik(
      scene, grasp.hand_pose_for(*goal_pose), phi_samples, grasp.held(task.object));
  if (place_candidates.empty()) {
    outcome.failed_stage = "place";
    return outcome;
  }
  JointConfig q_place = pick_closest(place_candidates, q_pick);

  Scene corridor = scene_without(scene, task.object.name);
  if (!run.plan(corridor, scene.arm.ready, q_pick, std::nullopt, "reach"))
    return outcome;
  if (!run.plan(scene, q_pick, q_place, grasp.held(task.object), "transport"))
    return outcome;

  Vec3 placed =
      (forward_kinematics(scene.arm, q_place) * grasp.hand_to_object).trans;
  if ((placed - task.goal_position).norm() > task.success_tolerance) {
    outcome.failed_stage = "place";
    return outcome;
  }

  if (!run.plan(corridor, q_place, scene.arm.ready, std::nullopt, "return"))
    return outcome;

  outcome.success = true;
  outcome.hand_displacement = run.displacement;
  return outcome;
}

TaskOutcome execute_pouring(const Scene& scene, const PouringTask& task,
                            const RankedGraspSet& ranked, int pick_rank, int budget,
                            std::uint64_t seed, int phi_samples) {
  TaskOutcome outcome;
  if (ranked.empty() || pick_rank < 0 ||
      static_cast<std::size_t>(pick_rank) >= ranked.size()) {
    outcome.failed_stage = "rank";
    return outcome;
  }
  const RankedEntry& chosen = ranked.ranked(pick_rank);
  outcome.grasp_id = chosen.grasp_id;
  outcome.group = chosen.group;
  const Grasp& grasp = chosen.grasp;

  StageRunner run{scene, budget, seed, outcome};

  std::vector<JointConfig> pick_candidates =
      collision_free_ik(scene, grasp.hand_pose_for(task.pourer_start), phi_samples,
                        grasp.held(task.pourer));
  if (pick_candidates.empty()) {
    outcome.failed_stage = "reach";
    return outcome;
  }
  JointConfig q_pick = pick_closest(pick_candidates, scene.arm.ready);

  std::optional<RigidTransform> goal_pose = chosen.goal_guess;
  if (!goal_pose)
    goal_pose = pouring_goal_guesses_for_grasps(scene, task, {grasp}, kDefaultPourThetas,
                                                kDefaultPourClearance, phi_samples)[0];
  if (!goal_pose) {
    outcome.failed_stage = "tilt";
    return outcome;
  }

  std::vector<JointConfig> goal_candidates = collision_free_ik(
      scene, grasp.hand_pose_for(*goal_pose), phi_samples, grasp.held(task.pourer));
  std::vector<JointConfig> tiltable;
  for (const JointConfig& q : goal_candidates)
    if (check_tilt_feasible(scene, task, q, grasp)) tiltable.push_back(q);
  if (tiltable.empty()) {
    outcome.failed_stage = "tilt";
    return outcome;
  }
  JointConfig q_goal = pick_closest(tiltable, q_pick);

  Scene corridor = scene_without(scene, task.pourer.name);
  if (!run.plan(corridor, scene.arm.ready, q_pick, std::nullopt, "reach"))
    return outcome;
  if (!run.plan(scene, q_pick, q_goal, grasp.held(task.pourer), "transport"))
    return outcome;
  if (!run.plan(corridor, q_goal, scene.arm.ready, std::nullopt, "return"))
    return outcome;

  outcome.success = true;
  outcome.hand_displacement = run.displacement;
  return outcome;
}

}  // namespace armgrasp
